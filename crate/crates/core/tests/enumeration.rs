mod common;

use std::io::Write;

use hyperrefl::fpgroups::{
    abelianization, load_presentation, parse_presentation, smith_invariants, todd_coxeter, EnumerationLimits,
    ParseOptions, Strategy,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::groups::{cayley_closure, corpus, Perm};

#[test]
fn enumeration_matches_cayley_closure() {
    let cases = corpus();
    assert!(cases.len() >= 20);
    for (name, text, oracle) in &cases {
        let p = parse_presentation(text).unwrap();
        let expected = oracle(&p);
        assert!(expected <= 200, "{name}");
        for strategy in [Strategy::Hlt, Strategy::Felsch] {
            let res = todd_coxeter(&p, &EnumerationLimits { max_cosets: 100_000, strategy });
            assert_eq!(res.index(), Some(expected), "{name} under {strategy}");
            let table = res.table.as_ref().unwrap();
            table.verify(&p).unwrap();
            let gens: Vec<Perm> = (0..p.generators().len()).map(|g| Perm(table.permutation(g))).collect();
            let regular = if gens.is_empty() { 1 } else { cayley_closure(&p, &gens, Perm((0..expected).collect())) };
            assert_eq!(regular, expected, "{name}: coset action is not regular");
        }
    }
}

#[test]
fn abelianization_divides_order() {
    for (name, text, _) in corpus() {
        let p = parse_presentation(text).unwrap();
        let n = todd_coxeter(&p, &EnumerationLimits::default()).index().unwrap();
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank(), 0, "{name}");
        let torsion: BigUint = ab.torsion().iter().product();
        assert!((BigUint::from(n) % torsion).is_zero(), "{name}");
    }
}

#[test]
fn known_abelianizations() {
    let expect = [("Klein", vec![2u32, 2]), ("C4xC6", vec![2, 12]), ("S4", vec![2]), ("A5", vec![]), ("Q8", vec![2, 2]), ("Dic3", vec![4]), ("Heisenberg(3)", vec![3, 3])];
    let corpus = corpus();
    for (name, factors) in expect {
        let text = corpus.iter().find(|c| c.0 == name).unwrap().1;
        let ab = abelianization(&parse_presentation(text).unwrap());
        let want: Vec<BigUint> = factors.into_iter().map(BigUint::from).collect();
        assert_eq!(ab.factors, want, "{name}");
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for j in 0..n {
        let minor: Vec<Vec<i128>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k × k` minors and the factors are `d_k / d_{k-1}`.
fn determinantal_invariants(m: &[Vec<i128>], cols: usize) -> Vec<BigUint> {
    let rows = m.len();
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let mut out: Vec<BigUint> = divisors.windows(2).map(|w| BigUint::from((w[1] / w[0]) as u128)).filter(|d| *d != BigUint::from(1u32)).collect();
    out.extend(std::iter::repeat_n(BigUint::zero(), cols - rank));
    out
}

#[test]
fn smith_form_matches_determinantal_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let rows = rng.gen_range(0..=4);
        let cols = rng.gen_range(1..=4);
        let m: Vec<Vec<i128>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen_range(-6..=6)).collect()).collect();
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let got = smith_invariants(big, cols).factors;
        assert_eq!(got, determinantal_invariants(&m, cols), "{m:?}");
        for w in got.iter().filter(|d| !d.is_zero()).collect::<Vec<_>>().windows(2) {
            assert!((w[1] % w[0]).is_zero());
        }
    }
}

#[test]
fn streamed_file_with_truncation() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "# a Magma-style file\nG<a,b> := Group<a,b |\n  a^2, b^3,\n  (a*b)^7, (a,b)^4,\n  (a*b*a*b^-1)^4 >;\n").unwrap();
    let full = load_presentation(f.path(), &ParseOptions::default()).unwrap();
    assert_eq!(full.presentation.relators().len(), 5);
    let part = load_presentation(f.path(), &ParseOptions { max_relators: Some(4) }).unwrap();
    assert!(part.truncated);
    assert_eq!(part.sha256, full.sha256);
    let limits = EnumerationLimits::default();
    let n_full = todd_coxeter(&full.presentation, &limits).index().unwrap();
    let n_part = todd_coxeter(&part.presentation, &limits).index().unwrap();
    assert_eq!(n_part, 168);
    assert_eq!(n_part % n_full, 0);
}
