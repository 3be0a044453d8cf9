use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;

use super::word::{normal_closure_quotient, Presentation, Word};
use super::FpError;

pub const DEFAULT_MAX_COSETS: usize = 10_000_000;

const UNDEF: u32 = u32::MAX;
const PROGRESS_INTERVAL: u64 = 1 << 18;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Relator-driven (Haselgrove–Leech–Trotter) with lookahead.
    #[default]
    Hlt,
    /// Definition-driven with deduction processing.
    Felsch,
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hlt" => Ok(Strategy::Hlt),
            "felsch" => Ok(Strategy::Felsch),
            other => Err(format!("unknown strategy `{other}` (expected hlt or felsch)")),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Hlt => "hlt",
            Strategy::Felsch => "felsch",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Most coset rows held at once, live or awaiting compaction.
    pub max_cosets: usize,
    pub strategy: Strategy,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits { max_cosets: DEFAULT_MAX_COSETS, strategy: Strategy::Hlt }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EnumStats {
    pub cosets_defined: u64,
    pub coincidences: u64,
    pub live: usize,
    pub max_live: usize,
    pub lookaheads: u64,
    pub compactions: u64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EnumOutcome {
    Complete { index: usize },
    LimitExceeded { max_cosets: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumResult {
    #[serde(flatten)]
    pub outcome: EnumOutcome,
    pub strategy: Strategy,
    pub stats: EnumStats,
    #[serde(skip)]
    pub table: Option<ClosedTable>,
}

impl EnumResult {
    pub fn index(&self) -> Option<usize> {
        match self.outcome {
            EnumOutcome::Complete { index } => Some(index),
            EnumOutcome::LimitExceeded { .. } => None,
        }
    }
}

/// A complete coset table: every column is a permutation of the cosets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedTable {
    ncols: usize,
    rows: usize,
    table: Vec<u32>,
}

impl ClosedTable {
    pub fn index(&self) -> usize {
        self.rows
    }

    /// Image of `coset` under generator `g` (or its inverse).
    pub fn act(&self, coset: usize, g: usize, inverse: bool) -> usize {
        self.table[coset * self.ncols + 2 * g + inverse as usize] as usize
    }

    pub fn permutation(&self, g: usize) -> Vec<usize> {
        (0..self.rows).map(|c| self.act(c, g, false)).collect()
    }

    /// Checks that the table is a permutation representation in which every
    /// relator acts trivially.
    pub fn verify(&self, p: &Presentation) -> Result<(), String> {
        if self.ncols != 2 * p.generators().len() {
            return Err("column count does not match the generators".into());
        }
        for c in 0..self.rows {
            for x in 0..self.ncols {
                let d = self.table[c * self.ncols + x] as usize;
                if d >= self.rows {
                    return Err(format!("entry ({c},{x}) is undefined"));
                }
                if self.table[d * self.ncols + (x ^ 1)] as usize != c {
                    return Err(format!("entry ({c},{x}) has no matching inverse"));
                }
            }
        }
        for (k, r) in p.relators().iter().enumerate() {
            for c in 0..self.rows {
                let mut f = c;
                for l in &r.0 {
                    f = self.table[f * self.ncols + l.0 as usize] as usize;
                }
                if f != c {
                    return Err(format!("relator {k} moves coset {c}"));
                }
            }
        }
        Ok(())
    }
}

pub fn todd_coxeter(p: &Presentation, limits: &EnumerationLimits) -> EnumResult {
    run(p, limits, None)
}

/// As [`todd_coxeter`], calling `progress` periodically during the run.
pub fn todd_coxeter_with_progress(
    p: &Presentation,
    limits: &EnumerationLimits,
    progress: &mut dyn FnMut(&EnumStats),
) -> EnumResult {
    run(p, limits, Some(progress))
}

/// Index of the normal closure of `words` in the group presented by `p`,
/// that is, the order of the quotient.
pub fn index_of_normal_closure(
    p: &Presentation,
    words: &[Word],
    limits: &EnumerationLimits,
) -> Result<EnumResult, FpError> {
    let q = normal_closure_quotient(p, words)?;
    Ok(todd_coxeter(&q, limits))
}

fn run(p: &Presentation, limits: &EnumerationLimits, progress: Option<&mut dyn FnMut(&EnumStats)>) -> EnumResult {
    let rels: Vec<Vec<u32>> = p.relators().iter().map(|r| r.0.iter().map(|l| l.0).collect()).collect();
    let ncols = 2 * p.generators().len();
    let limit = limits.max_cosets.clamp(1, (UNDEF - 1) as usize);
    let mut e = Engine::new(ncols, limit, progress);
    let finished = match limits.strategy {
        Strategy::Hlt => e.hlt(&rels),
        Strategy::Felsch => {
            let conj = cyclic_conjugates(&rels, ncols);
            e.track = true;
            e.felsch(&rels, &conj)
        }
    };
    e.stats.elapsed_seconds = e.start.elapsed().as_secs_f64();
    e.stats.live = e.live;
    match finished {
        Ok(()) => EnumResult {
            outcome: EnumOutcome::Complete { index: e.live },
            strategy: limits.strategy,
            stats: e.stats,
            table: Some(ClosedTable { ncols, rows: e.live, table: e.table }),
        },
        Err(Full) => EnumResult {
            outcome: EnumOutcome::LimitExceeded { max_cosets: limits.max_cosets },
            strategy: limits.strategy,
            stats: e.stats,
            table: None,
        },
    }
}

/// All distinct cyclic conjugates of the relators and their inverses,
/// bucketed by first letter.
fn cyclic_conjugates(rels: &[Vec<u32>], ncols: usize) -> Vec<Vec<Vec<u32>>> {
    let mut buckets = vec![Vec::new(); ncols];
    let mut seen = HashSet::new();
    for r in rels {
        let inv: Vec<u32> = r.iter().rev().map(|x| x ^ 1).collect();
        for w in [r, &inv] {
            for s in 0..w.len() {
                let rot: Vec<u32> = w[s..].iter().chain(&w[..s]).copied().collect();
                if seen.insert(rot.clone()) {
                    buckets[rot[0] as usize].push(rot);
                }
            }
        }
    }
    buckets
}

/// Coset table storage is exhausted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Full;

struct Engine<'a> {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    limit: usize,
    queue: Vec<u32>,
    deductions: Vec<(u32, u32)>,
    track: bool,
    low_water: usize,
    stats: EnumStats,
    start: Instant,
    progress: Option<&'a mut dyn FnMut(&EnumStats)>,
}

impl<'a> Engine<'a> {
    fn new(ncols: usize, limit: usize, progress: Option<&'a mut dyn FnMut(&EnumStats)>) -> Self {
        Engine {
            ncols,
            table: vec![UNDEF; ncols],
            parent: vec![0],
            live: 1,
            limit,
            queue: Vec::new(),
            deductions: Vec::new(),
            track: false,
            low_water: usize::MAX,
            stats: EnumStats { live: 1, max_live: 1, ..EnumStats::default() },
            start: Instant::now(),
            progress,
        }
    }

    #[inline]
    fn get(&self, c: u32, x: u32) -> u32 {
        self.table[c as usize * self.ncols + x as usize]
    }

    #[inline]
    fn set(&mut self, c: u32, x: u32, v: u32) {
        self.table[c as usize * self.ncols + x as usize] = v;
    }

    #[inline]
    fn alive(&self, c: usize) -> bool {
        self.parent[c] as usize == c
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    fn report(&mut self) {
        if let Some(cb) = self.progress.as_mut() {
            self.stats.live = self.live;
            self.stats.elapsed_seconds = self.start.elapsed().as_secs_f64();
            cb(&self.stats);
        }
    }

    fn define(&mut self, c: u32, x: u32) -> Result<u32, Full> {
        if self.rows() >= self.limit {
            return Err(Full);
        }
        let b = self.rows() as u32;
        self.parent.push(b);
        self.table.resize(self.table.len() + self.ncols, UNDEF);
        self.set(c, x, b);
        self.set(b, x ^ 1, c);
        self.live += 1;
        self.stats.cosets_defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        if self.track {
            self.deductions.push((c, x));
        }
        if self.stats.cosets_defined.is_multiple_of(PROGRESS_INTERVAL) {
            self.report();
        }
        Ok(b)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (p, q) = (self.rep(k), self.rep(l));
        if p == q {
            return;
        }
        let (keep, kill) = if p < q { (p, q) } else { (q, p) };
        self.parent[kill as usize] = keep;
        self.queue.push(kill);
        self.live -= 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        if self.rep(a) == self.rep(b) {
            return;
        }
        self.stats.coincidences += 1;
        self.queue.clear();
        self.merge(a, b);
        let mut qi = 0;
        while qi < self.queue.len() {
            let g = self.queue[qi];
            qi += 1;
            for x in 0..self.ncols as u32 {
                let d = self.get(g, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                self.low_water = self.low_water.min(d as usize);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mx = self.get(mu, x);
                if mx != UNDEF {
                    self.merge(nu, mx);
                    continue;
                }
                let nx = self.get(nu, x ^ 1);
                if nx != UNDEF {
                    self.merge(mu, nx);
                    continue;
                }
                self.set(mu, x, nu);
                self.set(nu, x ^ 1, mu);
                if self.track {
                    self.deductions.push((mu, x));
                }
            }
        }
    }

    /// Traces `r` from `a` forwards and backwards, defining new cosets to
    /// close the gap when `fill` is set.
    fn scan(&mut self, a: u32, r: &[u32], fill: bool) -> Result<(), Full> {
        let (mut f, mut b) = (a, a);
        let (mut i, mut j) = (0, r.len());
        loop {
            while i < j {
                let n = self.get(f, r[i]);
                if n == UNDEF {
                    break;
                }
                f = n;
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                let n = self.get(b, r[j - 1] ^ 1);
                if n == UNDEF {
                    break;
                }
                b = n;
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, r[i], b);
                self.set(b, r[i] ^ 1, f);
                if self.track {
                    self.deductions.push((f, r[i]));
                }
                return Ok(());
            }
            if !fill {
                return Ok(());
            }
            self.define(f, r[i])?;
        }
    }

    /// Renumbers live cosets consecutively; returns the new position of the
    /// first live coset at or after `ptr`.
    fn compact(&mut self, ptr: usize) -> usize {
        let n = self.rows();
        if self.live == n {
            return ptr;
        }
        let mut map = vec![UNDEF; n];
        let mut k = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] as usize == c {
                *slot = k;
                k += 1;
            }
        }
        let mut table = Vec::with_capacity(k as usize * self.ncols);
        for c in 0..n {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.ncols {
                let e = self.table[c * self.ncols + x];
                table.push(if e == UNDEF { UNDEF } else { map[self.rep(e) as usize] });
            }
        }
        let new_ptr = (ptr..n).find(|&c| map[c] != UNDEF).map_or(k as usize, |c| map[c] as usize);
        self.table = table;
        self.parent = (0..k).collect();
        self.low_water = 0;
        self.stats.compactions += 1;
        new_ptr
    }

    fn lookahead(&mut self, rels: &[Vec<u32>]) {
        self.stats.lookaheads += 1;
        for c in 0..self.rows() {
            for r in rels {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c as u32, r, false);
            }
        }
        self.report();
    }

    /// First live coset with an undefined entry, if any.
    fn first_incomplete(&self, from: usize) -> Option<(usize, u32)> {
        (from..self.rows()).filter(|&c| self.alive(c)).find_map(|c| {
            (0..self.ncols as u32).find(|&x| self.get(c as u32, x) == UNDEF).map(|x| (c, x))
        })
    }

    /// Confirms the table is complete and consistent, returning a row to
    /// resume from if it is not.
    fn check_closed(&mut self, rels: &[Vec<u32>]) -> Option<usize> {
        self.compact(0);
        if let Some((c, _)) = self.first_incomplete(0) {
            return Some(c);
        }
        let before = self.stats.coincidences;
        for c in 0..self.rows() {
            for r in rels {
                if !self.alive(c) {
                    break;
                }
                let _ = self.scan(c as u32, r, false);
            }
        }
        if self.stats.coincidences != before {
            self.compact(0);
            return Some(0);
        }
        None
    }

    fn hlt_row(&mut self, a: usize, rels: &[Vec<u32>]) -> Result<(), Full> {
        for r in rels {
            if !self.alive(a) {
                return Ok(());
            }
            self.scan(a as u32, r, true)?;
        }
        for x in 0..self.ncols as u32 {
            if !self.alive(a) {
                break;
            }
            if self.get(a as u32, x) == UNDEF {
                self.define(a as u32, x)?;
            }
        }
        Ok(())
    }

    fn hlt(&mut self, rels: &[Vec<u32>]) -> Result<(), Full> {
        let mut a = 0usize;
        loop {
            while a < self.rows() {
                if !self.alive(a) {
                    a += 1;
                    continue;
                }
                match self.hlt_row(a, rels) {
                    Ok(()) => {
                        a += 1;
                        if self.rows() > 2 * self.live {
                            a = self.compact(a);
                        }
                    }
                    Err(Full) => {
                        self.lookahead(rels);
                        a = self.compact(a);
                        if self.limit - self.rows() < (self.limit / 20).max(1) {
                            return Err(Full);
                        }
                    }
                }
            }
            match self.check_closed(rels) {
                None => return Ok(()),
                Some(row) => a = row,
            }
        }
    }

    fn process_deductions(&mut self, conj: &[Vec<Vec<u32>>]) {
        while let Some((c, x)) = self.deductions.pop() {
            if !self.alive(c as usize) {
                continue;
            }
            for w in &conj[x as usize] {
                if !self.alive(c as usize) {
                    break;
                }
                let _ = self.scan(c, w, false);
            }
            if !self.alive(c as usize) {
                continue;
            }
            let d = self.get(c, x);
            if d == UNDEF {
                continue;
            }
            for w in &conj[(x ^ 1) as usize] {
                if !self.alive(d as usize) {
                    break;
                }
                let _ = self.scan(d, w, false);
            }
        }
    }

    fn felsch(&mut self, rels: &[Vec<u32>], conj: &[Vec<Vec<u32>>]) -> Result<(), Full> {
        let mut ptr = 0usize;
        loop {
            self.process_deductions(conj);
            if self.rows() > 2 * self.live {
                ptr = self.compact(ptr);
            }
            ptr = ptr.min(self.low_water);
            self.low_water = usize::MAX;
            match self.first_incomplete(ptr) {
                Some((c, x)) => {
                    ptr = c;
                    if self.define(c as u32, x).is_err() {
                        ptr = self.compact(ptr);
                        if self.rows() >= self.limit {
                            return Err(Full);
                        }
                    }
                }
                None => match self.check_closed(rels) {
                    None => return Ok(()),
                    Some(row) => ptr = row,
                },
            }
        }
    }
}
