//! The reproduction battery: reflection certificates for every lattice
//! generator and the index of each normal closure studied for the Picard
//! lattices and the Hurwitz lattice, compared against the published values.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::exec::{map_jobs, Execution};
use crate::fpgroups::{
    load_presentation, normal_closure_quotient, todd_coxeter_with_progress, BindingCheck, EnumOutcome, EnumResult,
    EnumStats, EnumerationLimits, Format, FpError, NameMap, ParseOptions, Presentation,
};
use crate::hermitian::{builtin, Domain};
use crate::reflections::{certify, AnyCertificate};
use crate::rings::RingSpec;

/// Relators kept from the full Hurwitz presentation.
pub const TRUNCATED_RELATORS: usize = 1000;

/// Environment variable naming the directory of presentation files.
pub const DATA_DIR_ENV: &str = "HYPERREFL_PAPER_DATA";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DataSet {
    Picard(u64),
    Hurwitz,
}

impl DataSet {
    pub const ALL: [DataSet; 6] = [
        DataSet::Picard(1),
        DataSet::Picard(2),
        DataSet::Picard(3),
        DataSet::Picard(7),
        DataSet::Picard(11),
        DataSet::Hurwitz,
    ];

    pub fn domain(self) -> Domain {
        match self {
            DataSet::Picard(d) => Domain::Complex(RingSpec::new(d).expect("square-free")),
            DataSet::Hurwitz => Domain::Quaternionic,
        }
    }

    pub fn label(self) -> String {
        match self {
            DataSet::Picard(d) => format!("picard_d{d}"),
            DataSet::Hurwitz => format!("hurwitz_truncated_{TRUNCATED_RELATORS}"),
        }
    }

    /// Accepted file names, with the relator cap applied when reading.
    pub fn candidates(self) -> Vec<(String, Option<usize>)> {
        match self {
            DataSet::Picard(d) => vec![(format!("picard_d{d}.txt"), None), (format!("picard_d{d}.m"), None)],
            DataSet::Hurwitz => vec![
                (format!("hurwitz_truncated_{TRUNCATED_RELATORS}.txt"), Some(TRUNCATED_RELATORS)),
                (format!("QuaternionsTruncated{TRUNCATED_RELATORS}.txt"), Some(TRUNCATED_RELATORS)),
                ("hurwitz.txt".to_string(), Some(TRUNCATED_RELATORS)),
            ],
        }
    }

    /// Whether indices computed from this file only bound the true index.
    pub fn is_partial(self) -> bool {
        self == DataSet::Hurwitz
    }

    pub fn locate(self, dir: &Path) -> Option<(PathBuf, Option<usize>)> {
        self.candidates().into_iter().map(|(name, cap)| (dir.join(name), cap)).find(|(p, _)| p.is_file())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Equals,
    Divides,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexJob {
    pub id: &'static str,
    pub data: DataSet,
    pub relators: &'static [&'static str],
    pub expected: u64,
    pub slow: bool,
    pub claim: &'static str,
}

impl IndexJob {
    pub fn relation(&self) -> Relation {
        if self.data.is_partial() {
            Relation::Divides
        } else {
            Relation::Equals
        }
    }
}

/// The published index table.
pub fn index_jobs() -> Vec<IndexJob> {
    use DataSet::{Hurwitz, Picard};
    let job = |id, data, relators, expected, slow, claim| IndexJob { id, data, relators, expected, slow, claim };
    vec![
        job("d3-R", Picard(3), &["R"][..], 1, false, "the normal closure of R is the whole Eisenstein-Picard lattice"),
        job("d1-R-I0", Picard(1), &["R", "I0"][..], 1, false, "R and I0 normally generate the Gauss-Picard lattice"),
        job("d1-I0", Picard(1), &["I0"][..], 4, false, "the normal closure of I0 has index 4 for d=1"),
        job("d1-R", Picard(1), &["R"][..], 96, true, "the normal closure of R has index 96 for d=1"),
        job("d7-I0", Picard(7), &["I0"][..], 1, false, "the normal closure of I0 is the whole lattice for d=7"),
        job("d7-R", Picard(7), &["R"][..], 168, true, "the normal closure of R has index 168 for d=7"),
        job("d2-I0", Picard(2), &["I0"][..], 4, false, "the normal closure of I0 has index 4 for d=2"),
        job("d2-R-I0", Picard(2), &["R", "I0"][..], 4, false, "the normal closure of R and I0 has index 4 for d=2"),
        job("d11-R-I0", Picard(11), &["R", "I0"][..], 4, false, "the normal closure of R and I0 has index 4 for d=11"),
        job("d11-R", Picard(11), &["R"][..], 13_824, true, "the normal closure of R has index 13824 for d=11"),
        job("H-Rsigma", Hurwitz, &["Rsigma"][..], 1, false, "the normal closure of R_sigma is the whole Hurwitz lattice"),
        job("H-I0", Hurwitz, &["I0"][..], 12, false, "the normal closure of I0 has index dividing 12 in the Hurwitz lattice"),
        job("H-Ri", Hurwitz, &["Ri"][..], 648, false, "the normal closure of R_i has index dividing 648 in the Hurwitz lattice"),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertJob {
    pub id: String,
    pub domain: Domain,
    pub generator: &'static str,
    pub claim: &'static str,
}

/// Certificates for `I0` and `R` over each Picard ring and for the three
/// Hurwitz generators.
pub fn certificate_jobs() -> Vec<CertJob> {
    let mut jobs = Vec::new();
    for d in [1, 2, 3, 7, 11] {
        let domain = DataSet::Picard(d).domain();
        jobs.push(CertJob { id: format!("d{d}-I0"), domain, generator: "I0", claim: "I0 is a complex reflection" });
        jobs.push(CertJob { id: format!("d{d}-R"), domain, generator: "R", claim: "R is a complex reflection" });
    }
    for (generator, claim) in [
        ("I0", "I0 is a quaternionic reflection"),
        ("Ri", "R_i is a quaternionic reflection"),
        ("Rsigma", "R_sigma is a quaternionic reflection"),
    ] {
        jobs.push(CertJob { id: format!("H-{generator}"), domain: Domain::Quaternionic, generator, claim });
    }
    jobs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Mismatch,
    Inconclusive,
    Missing,
    Skipped,
    Error,
}

#[derive(Debug, Clone)]
pub struct BatteryOptions {
    pub data_dir: PathBuf,
    pub limits: EnumerationLimits,
    pub execution: Execution,
    pub skip_slow: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FileReport {
    pub dataset: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub searched: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relators: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relators_read: Option<usize>,
    pub truncated: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bindings: Vec<BindingCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertReport {
    pub id: String,
    pub domain: String,
    pub generator: String,
    pub claim: String,
    pub status: Status,
    pub matrix: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<AnyCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IndexReport {
    pub id: String,
    pub dataset: String,
    pub relators: Vec<String>,
    pub claim: String,
    pub relation: Relation,
    pub expected: u64,
    pub slow: bool,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<EnumResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub mismatched: usize,
    pub inconclusive: usize,
    pub missing: usize,
    pub skipped: usize,
    pub errors: usize,
    pub exit_code: i32,
}

impl Summary {
    fn count(&mut self, s: Status) {
        match s {
            Status::Pass => self.passed += 1,
            Status::Mismatch => self.mismatched += 1,
            Status::Inconclusive => self.inconclusive += 1,
            Status::Missing => self.missing += 1,
            Status::Skipped => self.skipped += 1,
            Status::Error => self.errors += 1,
        }
    }

    /// 1 on any mismatch, else 2 on missing or unreadable input, else 3 if an
    /// enumeration hit its limit, else 0.
    fn finish(&mut self) {
        self.exit_code = if self.mismatched > 0 {
            1
        } else if self.missing > 0 || self.errors > 0 {
            2
        } else if self.inconclusive > 0 {
            3
        } else {
            0
        };
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BatteryReport {
    pub data_dir: String,
    pub files: Vec<FileReport>,
    pub certificates: Vec<CertReport>,
    pub indices: Vec<IndexReport>,
    pub summary: Summary,
}

impl BatteryReport {
    pub fn index(&self, id: &str) -> Option<&IndexReport> {
        self.indices.iter().find(|r| r.id == id)
    }
}

pub type ProgressSink<'a> = &'a (dyn Fn(&str, &EnumStats) + Sync);

struct Loaded {
    presentation: Presentation,
    map: NameMap,
}

/// Statement of a computed index, weakened to divisibility for partial
/// presentations.
pub fn index_statement(n: u64, relation: Relation) -> String {
    match relation {
        Relation::Equals => format!("index = {n}"),
        Relation::Divides => format!("index divides {n}"),
    }
}

/// Default sidecar path for a presentation file: the same stem with `.map`.
pub fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("map")
}

fn load(data: DataSet, dir: &Path) -> (FileReport, Option<Loaded>) {
    let mut report = FileReport {
        dataset: data.label(),
        status: Status::Pass,
        path: None,
        searched: Vec::new(),
        sha256: None,
        format: None,
        generators: None,
        relators: None,
        relators_read: None,
        truncated: false,
        warnings: Vec::new(),
        bindings: Vec::new(),
        error: None,
    };
    let Some((path, cap)) = data.locate(dir) else {
        report.status = Status::Missing;
        report.searched = data.candidates().into_iter().map(|(n, _)| dir.join(n).display().to_string()).collect();
        return (report, None);
    };
    report.path = Some(path.display().to_string());
    let fail = |mut r: FileReport, e: FpError| {
        r.status = Status::Error;
        r.error = Some(e.to_string());
        (r, None)
    };
    let parsed = match load_presentation(&path, &ParseOptions { max_relators: cap }) {
        Ok(p) => p,
        Err(e) => return fail(report, e),
    };
    report.sha256 = Some(parsed.sha256.clone());
    report.format = Some(parsed.format);
    report.generators = Some(parsed.presentation.generators().len());
    report.relators = Some(parsed.presentation.relators().len());
    report.relators_read = Some(parsed.relators_read);
    report.truncated = parsed.truncated;
    report.warnings = parsed.warnings.clone();
    let sidecar = sidecar_path(&path);
    let map = if sidecar.is_file() {
        match NameMap::load(&sidecar) {
            Ok(m) => m,
            Err(e) => return fail(report, e),
        }
    } else {
        let names: Vec<&str> = crate::hermitian::paper_generators(data.domain()).iter().map(|(n, _)| *n).collect();
        NameMap::identity(&names, data.domain())
    };
    match map.validate(&parsed.presentation, data.domain()) {
        Ok(checks) => {
            if let Some(bad) = checks.iter().find(|c| c.is_reflection == Some(false)) {
                let e = FpError::NameMap(format!("`{}` is bound to a matrix that is not a reflection", bad.name));
                report.bindings = checks;
                return fail(report, e);
            }
            report.bindings = checks;
        }
        Err(e) => return fail(report, e),
    }
    (report, Some(Loaded { presentation: parsed.presentation, map }))
}

fn run_certificate(job: &CertJob) -> CertReport {
    let matrix = builtin(job.generator, job.domain).expect("built-in generator");
    let mut report = CertReport {
        id: job.id.clone(),
        domain: job.domain.to_string(),
        generator: job.generator.to_string(),
        claim: job.claim.to_string(),
        status: Status::Pass,
        matrix: matrix.to_string(),
        certificate: None,
        error: None,
    };
    match certify(&matrix) {
        Ok(c) => {
            let ok = c.is_reflection() && c.mirror_multiplicity() == Some(2);
            report.status = if ok { Status::Pass } else { Status::Mismatch };
            report.certificate = Some(c);
        }
        Err(e) => {
            report.status = Status::Error;
            report.error = Some(e.to_string());
        }
    }
    report
}

fn run_index(job: &IndexJob, loaded: Option<&Loaded>, limits: &EnumerationLimits, progress: Option<ProgressSink>) -> IndexReport {
    let mut report = IndexReport {
        id: job.id.to_string(),
        dataset: job.data.label(),
        relators: job.relators.iter().map(|s| s.to_string()).collect(),
        claim: job.claim.to_string(),
        relation: job.relation(),
        expected: job.expected,
        slow: job.slow,
        status: Status::Missing,
        computed: None,
        statement: None,
        enumeration: None,
        error: None,
    };
    let Some(loaded) = loaded else { return report };
    let words: Result<Vec<_>, _> = job.relators.iter().map(|n| loaded.map.resolve(n, &loaded.presentation)).collect();
    let quotient = words.and_then(|w| normal_closure_quotient(&loaded.presentation, &w));
    let q = match quotient {
        Ok(q) => q,
        Err(e) => {
            report.status = Status::Error;
            report.error = Some(e.to_string());
            return report;
        }
    };
    let res = match progress {
        Some(cb) => todd_coxeter_with_progress(&q, limits, &mut |s| cb(job.id, s)),
        None => todd_coxeter_with_progress(&q, limits, &mut |_| {}),
    };
    match res.outcome {
        EnumOutcome::Complete { index } => {
            let n = index as u64;
            report.computed = Some(n);
            report.statement = Some(index_statement(n, job.relation()));
            report.status = if n == job.expected { Status::Pass } else { Status::Mismatch };
        }
        EnumOutcome::LimitExceeded { .. } => report.status = Status::Inconclusive,
    }
    report.enumeration = Some(res);
    report
}

/// Runs every certificate and every index job whose data file is present.
pub fn run_battery(opts: &BatteryOptions, progress: Option<ProgressSink>) -> BatteryReport {
    let certificates = map_jobs(opts.execution, &certificate_jobs(), run_certificate);

    let jobs = index_jobs();
    let mut needed: Vec<DataSet> = jobs.iter().map(|j| j.data).collect();
    needed.sort();
    needed.dedup();
    let loaded = map_jobs(opts.execution, &needed, |&d| load(d, &opts.data_dir));
    let mut files = Vec::new();
    let mut by_set: HashMap<DataSet, Loaded> = HashMap::new();
    let mut file_status: HashMap<DataSet, Status> = HashMap::new();
    for (d, (report, l)) in needed.iter().zip(loaded) {
        file_status.insert(*d, report.status);
        files.push(report);
        if let Some(l) = l {
            by_set.insert(*d, l);
        }
    }

    let mut indices = map_jobs(opts.execution, &jobs, |job| {
        if opts.skip_slow && job.slow {
            let mut r = run_index(job, None, &opts.limits, None);
            r.status = Status::Skipped;
            return r;
        }
        let mut r = run_index(job, by_set.get(&job.data), &opts.limits, progress);
        if file_status.get(&job.data) == Some(&Status::Error) {
            r.status = Status::Error;
            r.error = Some(format!("{} could not be loaded", job.data.label()));
        }
        r
    });
    indices.sort_by_key(|r| jobs.iter().position(|j| j.id == r.id));

    let mut summary = Summary::default();
    for s in certificates.iter().map(|c| c.status).chain(indices.iter().map(|r| r.status)) {
        summary.count(s);
    }
    summary.finish();
    BatteryReport { data_dir: opts.data_dir.display().to_string(), files, certificates, indices, summary }
}
