//! Property suites shared by `properties` and `acceptance`. Each suite checks
//! every fixture first, then 500 random cases.

use covers::approx::approximate;
use covers::fixtures::{chebyshev3, cosine, exp_chain, gaussian, power_map};
use covers::lift::{isotopic, lift_class, lift_word, member, subgroup_basis};
use covers::planar::FaceSet;
use covers::quad::{validate_admissible, Quadruple, ViolationKind};
use covers::word::{Letter, Word};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use std::sync::OnceLock;

pub const CASES: u32 = 500;

/// Every fixture, then finite approximants of the three generators.
pub fn pool() -> &'static [Quadruple] {
    static POOL: OnceLock<Vec<Quadruple>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut v: Vec<Quadruple> = (1..=6).map(power_map).collect();
        v.extend([exp_chain(), cosine(), gaussian(), chebyshev3()]);
        for g in [exp_chain(), cosine(), gaussian()] {
            for n in 0..=5 {
                v.push(approximate(&g, n).unwrap().quad);
            }
        }
        v
    })
}

fn finite_pool() -> Vec<&'static Quadruple> {
    pool().iter().filter(|q| q.is_finite()).collect()
}

fn vertex_count(q: &Quadruple) -> usize {
    q.gamma.core_vertices.len() + q.gamma.cells.iter().map(|c| c.vertices.len()).sum::<usize>()
}

fn word_of(m: usize, raw: &[(usize, bool)]) -> Word {
    Word(raw.iter().map(|&(g, i)| Letter::new(g % m, i)).collect())
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, any::<bool>()), 0..max)
}

fn run<S: Strategy>(s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() });
    runner.run(&s, f).map_err(|e| e.to_string())
}

fn euler_holds(q: &Quadruple) -> Result<(), TestCaseError> {
    let g = q.gamma.expand(0).unwrap().graph;
    let faces = FaceSet::trace(&g).unwrap().len();
    prop_assert_eq!(g.vertex_count() as i64 - g.edge_count() as i64 + faces as i64, 2);
    Ok(())
}

pub fn euler_formula() -> Result<(), String> {
    for q in finite_pool() {
        euler_holds(q).map_err(|e| e.to_string())?;
    }
    run((1usize..=9, 0usize..3, 0usize..=7), |(d, which, n)| {
        let q = match which {
            0 => power_map(d),
            1 => approximate(&cosine(), n).unwrap().quad,
            _ => approximate(&gaussian(), n).unwrap().quad,
        };
        euler_holds(&q)
    })
}

pub fn covering_determinism() -> Result<(), String> {
    for q in pool() {
        if validate_admissible(q).has(ViolationKind::CoveringDeterminism) {
            return Err("fixture violates covering determinism".into());
        }
    }
    run((0usize..1000, 0usize..64, raw_word(10)), |(i, v, raw)| {
        let q = &pool()[i % pool().len()];
        let v = v % vertex_count(q);
        let w = word_of(q.m(), &raw);
        let a = lift_word(q, v, &w).unwrap();
        let b = lift_word(q, v, &w).unwrap();
        prop_assert_eq!(&a.vertices, &b.vertices);
        prop_assert_eq!(lift_word(q, a.end(), &w.inverse()).unwrap().end(), v);
        Ok(())
    })
}

pub fn lift_concatenation() -> Result<(), String> {
    run((0usize..1000, 0usize..64, raw_word(8), raw_word(8)), |(i, v, ru, rw)| {
        let q = &pool()[i % pool().len()];
        let v = v % vertex_count(q);
        let (u, w) = (word_of(q.m(), &ru), word_of(q.m(), &rw));
        let mid = lift_word(q, v, &u).unwrap().end();
        let whole = lift_word(q, v, &u.concat(&w)).unwrap();
        prop_assert_eq!(whole.end(), lift_word(q, mid, &w).unwrap().end());
        Ok(())
    })
}

pub fn member_reduction() -> Result<(), String> {
    let spots = prop::collection::vec((0usize..16, 0usize..8, any::<bool>()), 0..4);
    run((0usize..1000, 0usize..64, raw_word(10), spots), |(i, v, raw, spots)| {
        let q = &pool()[i % pool().len()];
        let v = v % vertex_count(q);
        let w = word_of(q.m(), &raw);
        let mut padded = w.0.clone();
        for (at, g, inv) in spots {
            let l = Letter::new(g % q.m(), inv);
            let at = at % (padded.len() + 1);
            padded.splice(at..at, [l, l.inverse()]);
        }
        let padded = Word(padded);
        prop_assert_eq!(padded.reduced(), w.reduced());
        prop_assert_eq!(member(q, v, &padded).unwrap(), member(q, v, &w.reduced()).unwrap());
        Ok(())
    })
}

pub fn lift_class_homomorphism() -> Result<(), String> {
    let picks = prop::collection::vec((0usize..16, any::<bool>()), 1..5);
    run((0usize..1000, 0usize..64, picks, 0usize..5), |(i, v, picks, split)| {
        let fp = finite_pool();
        let q = fp[i % fp.len()];
        let v = v % vertex_count(q);
        let basis = subgroup_basis(q, v).unwrap();
        prop_assert!(!basis.is_empty());
        let parts: Vec<Word> = picks
            .iter()
            .map(|&(k, inv)| {
                let b = &basis[k % basis.len()];
                if inv { b.inverse() } else { b.clone() }
            })
            .collect();
        let split = split % (parts.len() + 1);
        let cat = |ws: &[Word]| ws.iter().fold(Word::empty(), |a, b| a.concat(b));
        let (u, w) = (cat(&parts[..split]), cat(&parts[split..]));
        let cu = lift_class(q, v, &u).unwrap();
        let cw = lift_class(q, v, &w).unwrap();
        let cuw = lift_class(q, v, &u.concat(&w)).unwrap();
        prop_assert_eq!(cuw.reduced(), cu.concat(&cw).reduced());
        Ok(())
    })
}

pub fn isotopic_reflexive_symmetric() -> Result<(), String> {
    run((0usize..1000, 0usize..1000, 0usize..64, 0usize..64, raw_word(3)), |(i, j, a, b, raw)| {
        let fp = finite_pool();
        let (q1, q2) = (fp[i % fp.len()], fp[j % fp.len()]);
        let (a, b) = (a % vertex_count(q1), b % vertex_count(q2));
        prop_assert!(isotopic(q1, a, q1, a, &Word::empty()).unwrap().ok());
        if q1.m() == q2.m() {
            let p = Word(raw.iter().map(|&(g, inv)| Letter::new(g % q1.marked.len(), inv)).collect());
            let fwd = isotopic(q1, a, q2, b, &p).unwrap().ok();
            let bwd = isotopic(q2, b, q1, a, &p.inverse()).unwrap().ok();
            prop_assert_eq!(fwd, bwd);
        }
        Ok(())
    })
}

pub type Suite = (&'static str, fn() -> Result<(), String>);

pub const SUITES: [Suite; 6] = [
    ("Euler formula", euler_formula),
    ("covering determinism", covering_determinism),
    ("lift-concatenation homomorphism", lift_concatenation),
    ("member invariance under free reduction", member_reduction),
    ("lift_class homomorphism", lift_class_homomorphism),
    ("isotopic reflexivity/symmetry", isotopic_reflexive_symmetric),
];
