#![allow(dead_code)]

use std::collections::HashSet;
use std::hash::Hash;

use hyperrefl::fpgroups::Presentation;

pub trait Elem: Clone + Eq + Hash {
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
}

/// Permutation of `0..n`, composed left to right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn cycles(n: usize, cycles: &[&[usize]]) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        for c in cycles {
            for i in 0..c.len() {
                p[c[i]] = c[(i + 1) % c.len()];
            }
        }
        Perm(p)
    }
}

impl Elem for Perm {
    fn mul(&self, other: &Self) -> Self {
        Perm(self.0.iter().map(|&i| other.0[i]).collect())
    }
    fn inv(&self) -> Self {
        let mut r = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x] = i;
        }
        Perm(r)
    }
}

/// `a^k b^e` in the dicyclic group of order `4n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Dic {
    pub n: i64,
    pub k: i64,
    pub e: i64,
}

impl Elem for Dic {
    fn mul(&self, o: &Self) -> Self {
        let sign = if self.e == 0 { 1 } else { -1 };
        let k = self.k + sign * o.k + if self.e == 1 && o.e == 1 { self.n } else { 0 };
        Dic { n: self.n, k: k.rem_euclid(2 * self.n), e: (self.e + o.e) % 2 }
    }
    fn inv(&self) -> Self {
        let mut x = self.clone();
        loop {
            let next = x.mul(self);
            if next.k == 0 && next.e == 0 {
                return x;
            }
            x = next;
        }
    }
}

/// Unitriangular 3×3 matrices over `Z/3`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Heis(pub i64, pub i64, pub i64);

impl Elem for Heis {
    fn mul(&self, o: &Self) -> Self {
        Heis((self.0 + o.0) % 3, (self.1 + o.1) % 3, (self.2 + o.2 + self.0 * o.1) % 3)
    }
    fn inv(&self) -> Self {
        let (a, b) = ((3 - self.0) % 3, (3 - self.1) % 3);
        Heis(a, b, (6 - self.2 + self.0 * self.1).rem_euclid(3) % 3)
    }
}

/// 2×2 matrices over `Z/p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat2 {
    pub p: i64,
    pub m: [i64; 4],
}

impl Elem for Mat2 {
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = (self.m, o.m);
        let r = |x: i64| x.rem_euclid(self.p);
        Mat2 { p: self.p, m: [r(a[0] * b[0] + a[1] * b[2]), r(a[0] * b[1] + a[1] * b[3]), r(a[2] * b[0] + a[3] * b[2]), r(a[2] * b[1] + a[3] * b[3])] }
    }
    fn inv(&self) -> Self {
        let mut x = self.clone();
        loop {
            let next = x.mul(self);
            if next.m == [1, 0, 0, 1] {
                return x;
            }
            x = next;
        }
    }
}

/// Size of the group generated by `gens`, after checking that every
/// relator of `p` evaluates to the identity on them.
pub fn cayley_closure<G: Elem + std::fmt::Debug>(p: &Presentation, gens: &[G], id: G) -> usize {
    assert_eq!(gens.len(), p.generators().len());
    for r in p.relators() {
        let mut x = id.clone();
        for l in &r.0 {
            let g = &gens[l.generator()];
            x = x.mul(&if l.is_inverse() { g.inv() } else { g.clone() });
        }
        assert_eq!(x, id, "relator {} fails in the model", p.display_word(r));
    }
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
        assert!(seen.len() <= 200, "closure exceeds 200 elements");
    }
    seen.len()
}

pub type Oracle = Box<dyn Fn(&Presentation) -> usize>;

fn perms(n: usize, gens: Vec<Vec<&'static [usize]>>) -> Oracle {
    Box::new(move |p| {
        let g: Vec<Perm> = gens.iter().map(|c| Perm::cycles(n, c)).collect();
        cayley_closure(p, &g, Perm((0..n).collect()))
    })
}

fn images(gens: Vec<Vec<usize>>) -> Oracle {
    Box::new(move |p| {
        let n = gens[0].len();
        let g: Vec<Perm> = gens.iter().cloned().map(Perm).collect();
        cayley_closure(p, &g, Perm((0..n).collect()))
    })
}

fn dicyclic(n: i64) -> Oracle {
    Box::new(move |p| {
        let g = [Dic { n, k: 1, e: 0 }, Dic { n, k: 0, e: 1 }];
        cayley_closure(p, &g, Dic { n, k: 0, e: 0 })
    })
}

pub fn corpus() -> Vec<(&'static str, &'static str, Oracle)> {
    vec![
        ("trivial", "gens a\nrels\na", perms(1, vec![vec![]])),
        ("C5", "gens a\nrels\na^5", perms(5, vec![vec![&[0, 1, 2, 3, 4]]])),
        ("C12", "gens a\nrels\na^12", perms(12, vec![vec![&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]])),
        ("Klein", "gens a b\nrels\na^2\nb^2\n(a,b)", perms(4, vec![vec![&[0, 1]], vec![&[2, 3]]])),
        ("C4xC6", "Group<a,b | a^4, b^6, a*b = b*a>", perms(10, vec![vec![&[0, 1, 2, 3]], vec![&[4, 5, 6, 7, 8, 9]]])),
        (
            "C2^3",
            "gens a b c\nrels\na^2\nb^2\nc^2\n(a,b)\n(b,c)\n(a,c)",
            perms(6, vec![vec![&[0, 1]], vec![&[2, 3]], vec![&[4, 5]]]),
        ),
        ("S3", "gens a b\nrels\na^2\nb^2\n(a*b)^3", perms(3, vec![vec![&[0, 1]], vec![&[1, 2]]])),
        ("D4", "gens r s\nrels\nr^4\ns^2\n(s*r)^2", perms(4, vec![vec![&[0, 1, 2, 3]], vec![&[1, 3]]])),
        ("D6", "gens r s\nrels\nr^6\ns^2\ns^-1*r*s = r^-1", perms(6, vec![vec![&[0, 1, 2, 3, 4, 5]], vec![&[1, 5], &[2, 4]]])),
        (
            "D10",
            "gens r s\nrels\nr^10\ns^2\n(s*r)^2",
            perms(10, vec![vec![&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]], vec![&[1, 9], &[2, 8], &[3, 7], &[4, 6]]]),
        ),
        ("Q8", "gens a b\nrels\na^4\na^2 = b^2\na^b = a^-1", perms(8, vec![vec![&[0, 1, 3, 6], &[2, 5, 7, 4]], vec![&[0, 2, 3, 7], &[1, 4, 6, 5]]])),
        ("Q8-dicyclic", "gens a b\nrels\na^4\nb^2 = a^2\n(a*b)^2 = a^2", dicyclic(2)),
        ("Dic3", "gens a b\nrels\na^6\nb^2 = a^3\nb^-1*a*b = a^-1", dicyclic(3)),
        ("Dic5", "gens a b\nrels\na^10\nb^2 = a^5\nb^-1*a*b = a^-1", dicyclic(5)),
        ("A4", "gens a b\nrels\na^2\nb^3\n(a*b)^3", perms(4, vec![vec![&[0, 1], &[2, 3]], vec![&[0, 1, 2]]])),
        ("S4", "gens a b\nrels\na^2\nb^3\n(a*b)^4", perms(4, vec![vec![&[0, 1]], vec![&[1, 2, 3]]])),
        ("A5", "gens a b\nrels\na^2\nb^3\n(a*b)^5", perms(5, vec![vec![&[0, 1], &[2, 3]], vec![&[0, 2, 4]]])),
        (
            "Coxeter A3",
            "gens a b c\nrels\na^2\nb^2\nc^2\n(a*b)^3\n(b*c)^3\n(a*c)^2",
            perms(4, vec![vec![&[0, 1]], vec![&[1, 2]], vec![&[2, 3]]]),
        ),
        (
            "Coxeter A4",
            "gens a b c d\nrels\na^2\nb^2\nc^2\nd^2\n(a*b)^3\n(b*c)^3\n(c*d)^3\n(a*c)^2\n(a*d)^2\n(b*d)^2",
            perms(5, vec![vec![&[0, 1]], vec![&[1, 2]], vec![&[2, 3]], vec![&[3, 4]]]),
        ),
        (
            "Coxeter B3",
            "gens a b c\nrels\na^2\nb^2\nc^2\n(a*b)^4\n(b*c)^3\n(a*c)^2",
            perms(6, vec![vec![&[0, 3]], vec![&[0, 1], &[3, 4]], vec![&[1, 2], &[4, 5]]]),
        ),
        (
            "PSL(2,7)",
            "G<a,b> := Group<a,b | a^2, b^3, (a*b)^7, (a,b)^4>;",
            images(vec![vec![0, 6, 2, 5, 4, 3, 1], vec![4, 3, 1, 2, 5, 0, 6]]),
        ),
        ("F20", "gens a b\nrels\na^5\nb^4\na^b = a^2", images(vec![vec![1, 2, 3, 4, 0], vec![0, 2, 4, 1, 3]])),
        ("F21", "gens a b\nrels\na^7\nb^3\nb^-1*a*b = a^2", images(vec![vec![1, 2, 3, 4, 5, 6, 0], vec![0, 2, 4, 6, 1, 3, 5]])),
        (
            "Heisenberg(3)",
            "gens x y\nrels\nx^3\ny^3\n(x,y)^3\n(x,(x,y))\n(y,(x,y))",
            Box::new(|p| cayley_closure(p, &[Heis(1, 0, 0), Heis(0, 1, 0)], Heis(0, 0, 0))),
        ),
        (
            "Heisenberg(3) as Burnside quotient",
            "gens x y\nrels\nx^3\ny^3\n(x*y)^3\n(x*y^-1)^3",
            Box::new(|p| cayley_closure(p, &[Heis(1, 0, 0), Heis(0, 1, 0)], Heis(0, 0, 0))),
        ),
        (
            "SL(2,3)",
            "gens s t\nrels\n(s*t)^2 = s^3\ns^3 = t^3",
            Box::new(|p| {
                let s = Mat2 { p: 3, m: [2, 2, 0, 2] };
                let t = Mat2 { p: 3, m: [2, 0, 2, 2] };
                cayley_closure(p, &[s, t], Mat2 { p: 3, m: [1, 0, 0, 1] })
            }),
        ),
    ]
}

