//! Randomised structural checks shared by the test suites and the acceptance run.
#![allow(dead_code)]

use ncinv_core::algebra::{BasisTable, GradedAlgebra, Word};
use ncinv_core::bounds::{d_value, ExtRat, TSeq, Val};
use ncinv_core::fixtures;
use ncinv_core::homology::{Resolution, RestrictedModule, TrivialModule};
use ncinv_core::hopf::{apply_columns, DegreeActions};
use ncinv_core::input::InputDocument;
use ncinv_core::invariants::{InvariantRing, Side};
use ncinv_core::linalg::SparseVec;
use ncinv_core::pipeline::{analyze, Command, Fixture};
use ncinv_core::series::{product_denominator, HilbertSeries};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

pub const SEED: u64 = 0x006e_6369_6e76;

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

#[derive(Clone, Debug)]
enum Kind {
    /// k_q[x,y]
    Skew2(i64),
    /// k<x,y>
    Free2,
    /// k_{−1}[x,y,z]
    Minus3,
    /// k[x,y,z]
    Poly3,
}

#[derive(Clone, Debug)]
struct Case {
    kind: Kind,
    generators: Vec<Vec<Vec<i64>>>,
    n: usize,
}

impl Case {
    fn document(&self) -> String {
        let (gens, rels, assert): (&[&str], Vec<String>, &str) = match self.kind {
            Kind::Skew2(q) => (
                &["x", "y"],
                vec![format!("yx - ({q})xy")],
                r#"{"gldim": 2, "as_regular": true, "domain": true, "noetherian": true, "koszul": true}"#,
            ),
            Kind::Free2 => (&["x", "y"], vec![], r#"{"gldim": 1, "domain": true}"#),
            Kind::Minus3 => (
                &["x", "y", "z"],
                vec!["xy + yx".into(), "xz + zx".into(), "yz + zy".into()],
                r#"{"gldim": 3, "as_regular": true, "domain": true, "noetherian": true, "koszul": true}"#,
            ),
            Kind::Poly3 => (
                &["x", "y", "z"],
                vec!["yx - xy".into(), "zx - xz".into(), "zy - yz".into()],
                r#"{"gldim": 3, "as_regular": true, "domain": true, "noetherian": true, "koszul": true}"#,
            ),
        };
        let g: Vec<String> = gens
            .iter()
            .map(|n| format!(r#"{{"name": "{n}", "degree": 1}}"#))
            .collect();
        let r: Vec<String> = rels.iter().map(|s| format!("\"{s}\"")).collect();
        let m = serde_json::to_string(&self.generators).unwrap();
        format!(
            r#"{{"name": "random", "algebra": {{"generators": [{}], "relations": [{}], "assert": {assert}}},
                "action": {{"group": {{"generators": {m}}}}}, "parameters": {{"max_degree": {}, "max_homological": 3}}}}"#,
            g.join(", "),
            r.join(", "),
            self.n
        )
    }

    fn fixture(&self) -> Fixture {
        InputDocument::parse(&self.document())
            .unwrap()
            .compile()
            .unwrap()
    }
}

/// Signed permutation matrix.
fn signed_perm(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (
        Just((0..k).collect::<Vec<_>>()).prop_shuffle(),
        prop::collection::vec(prop::bool::ANY, k),
    )
        .prop_map(move |(perm, signs)| {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            if perm[i] == j {
                                if signs[i] {
                                    -1
                                } else {
                                    1
                                }
                            } else {
                                0
                            }
                        })
                        .collect()
                })
                .collect()
        })
}

fn diagonal(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::bool::ANY, k).prop_map(move |signs| {
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        if i == j {
                            if signs[i] {
                                -1
                            } else {
                                1
                            }
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect()
    })
}

/// A group of signed permutations preserving the relations of the chosen algebra.
fn case() -> impl Strategy<Value = Case> {
    let skew = (
        prop::sample::select(vec![2i64, -2, 3]),
        prop::collection::vec(diagonal(2), 1..=2),
        4usize..=7,
    )
        .prop_map(|(q, g, n)| Case {
            kind: Kind::Skew2(q),
            generators: g,
            n,
        });
    let pm = (
        prop::sample::select(vec![1i64, -1]),
        prop::collection::vec(signed_perm(2), 1..=2),
        4usize..=7,
    )
        .prop_map(|(q, g, n)| Case {
            kind: Kind::Skew2(q),
            generators: g,
            n,
        });
    let free = (prop::collection::vec(signed_perm(2), 1..=2), 3usize..=6).prop_map(|(g, n)| Case {
        kind: Kind::Free2,
        generators: g,
        n,
    });
    let three = (
        prop::bool::ANY,
        prop::collection::vec(signed_perm(3), 1..=2),
        3usize..=5,
    )
        .prop_map(|(minus, g, n)| Case {
            kind: if minus { Kind::Minus3 } else { Kind::Poly3 },
            generators: g,
            n,
        });
    prop_oneof![skew, pm, free, three]
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    TestRunner::new(config(cases))
        .run(&strategy, test)
        .map_err(|e| e.to_string())
}

fn unit(i: usize, t: &BasisTable) -> SparseVec {
    SparseVec::unit(i, t.field().one())
}

fn random_vec(dim: usize, seed: &[i8]) -> SparseVec {
    let f = ncinv_core::field::Field::rationals();
    SparseVec::from_pairs((0..dim).map(|i| (i, f.from_int(seed[i % seed.len()] as i64))))
}

pub type Suite = (&'static str, fn(u32) -> Result<(), String>);

pub const SUITES: &[Suite] = &[
    (
        "reynolds_is_an_idempotent_projection_onto_invariants",
        reynolds_is_an_idempotent_projection_onto_invariants,
    ),
    ("action_measures_products", action_measures_products),
    (
        "products_of_invariants_are_invariant",
        products_of_invariants_are_invariant,
    ),
    ("relation_ideal_is_two_sided", relation_ideal_is_two_sided),
    (
        "multiplication_is_associative",
        multiplication_is_associative,
    ),
    (
        "resolutions_are_minimal_complexes",
        resolutions_are_minimal_complexes,
    ),
    (
        "tau_is_one_more_than_module_generation_degree",
        tau_is_one_more_than_module_generation_degree,
    ),
    (
        "certified_bound_rows_are_never_violated",
        certified_bound_rows_are_never_violated,
    ),
    (
        "fitted_series_reproduce_their_coefficients",
        fitted_series_reproduce_their_coefficients,
    ),
    ("d_is_monotone_away_from_t2", d_is_monotone_away_from_t2),
    ("hopf_measuring_on_h8", hopf_measuring_on_h8),
];

pub fn reynolds_is_an_idempotent_projection_onto_invariants(cases: u32) -> Result<(), String> {
    check(cases, case(), |c| {
        let fx = c.fixture();
        let table = BasisTable::build(&fx.presentation, c.n).unwrap();
        let acts = DegreeActions::new(&fx.action, &table).unwrap();
        for d in 0..=c.n {
            let p = acts.reynolds_projector(d);
            for col in &p {
                prop_assert_eq!(&apply_columns(&p, col), col);
                prop_assert!(acts.is_invariant(d, col));
            }
        }
        Ok(())
    })
}

pub fn action_measures_products(cases: u32) -> Result<(), String> {
    check(
        cases,
        (case(), 0usize..64, 0usize..64, 0usize..4, 0usize..4),
        |(c, a, b, d1, d2)| {
            let fx = c.fixture();
            let table = BasisTable::build(&fx.presentation, c.n).unwrap();
            let acts = DegreeActions::new(&fx.action, &table).unwrap();
            prop_assume!(d1 + d2 <= c.n);
            let x = unit(a % table.dim(d1), &table);
            let y = unit(b % table.dim(d2), &table);
            let xy = table.mul(d1, &x, d2, &y);
            let hopf = &fx.action.hopf;
            for h in 0..hopf.dim() {
                let lhs = acts.act(&unit(h, &table), d1 + d2, &xy);
                let mut rhs = SparseVec::new();
                for (j, k, coef) in &hopf.coproduct[h] {
                    let l = acts.act(&unit(*j, &table), d1, &x);
                    let r = acts.act(&unit(*k, &table), d2, &y);
                    rhs = rhs.axpy(coef, &table.mul(d1, &l, d2, &r));
                }
                prop_assert_eq!(lhs, rhs);
            }
            Ok(())
        },
    )
}

pub fn products_of_invariants_are_invariant(cases: u32) -> Result<(), String> {
    check(
        cases,
        (case(), 0usize..16, 0usize..16, 1usize..4, 1usize..4),
        |(c, i, j, d1, d2)| {
            let fx = c.fixture();
            let table = BasisTable::build(&fx.presentation, c.n).unwrap();
            let acts = DegreeActions::new(&fx.action, &table).unwrap();
            let ring = InvariantRing::from_actions(&acts);
            prop_assume!(d1 + d2 <= c.n && ring.dim(d1) > 0 && ring.dim(d2) > 0);
            let f = ring.basis(d1)[i % ring.dim(d1)].clone();
            let g = ring.basis(d2)[j % ring.dim(d2)].clone();
            let fg = table.mul(d1, &f, d2, &g);
            prop_assert!(acts.is_invariant(d1 + d2, &fg));
            prop_assert!(ring.coordinates(d1 + d2, &fg).is_some());
            Ok(())
        },
    )
}

pub fn relation_ideal_is_two_sided(cases: u32) -> Result<(), String> {
    check(
        cases,
        (
            case(),
            prop::collection::vec(0u16..3, 0..3),
            prop::collection::vec(0u16..3, 0..3),
            0usize..3,
        ),
        |(c, u, v, r)| {
            let fx = c.fixture();
            let p = &fx.presentation;
            prop_assume!(!p.relations().is_empty());
            let k = p.generators().len() as u16;
            let u = Word(u.into_iter().map(|g| g % k).collect());
            let v = Word(v.into_iter().map(|g| g % k).collect());
            let rel = &p.relations()[r % p.relations().len()];
            let d = rel.terms[0].1.len() + u.len() + v.len();
            prop_assume!(d <= c.n);
            let table = BasisTable::build(p, c.n).unwrap();
            let mut acc = SparseVec::new();
            for (coef, w) in &rel.terms {
                let (_, nf) = table.normal_form_word(&u.concat(w).concat(&v)).unwrap();
                acc = acc.axpy(coef, &nf);
            }
            prop_assert!(acc.is_zero());
            Ok(())
        },
    )
}

pub fn multiplication_is_associative(cases: u32) -> Result<(), String> {
    check(
        cases,
        (
            case(),
            prop::collection::vec(-3i8..=3, 2..6),
            0usize..3,
            0usize..3,
            0usize..3,
        ),
        |(c, s, d1, d2, d3)| {
            let fx = c.fixture();
            let table = BasisTable::build(&fx.presentation, c.n).unwrap();
            prop_assume!(d1 + d2 + d3 <= c.n);
            let a = random_vec(table.dim(d1), &s);
            let b = random_vec(table.dim(d2), &s[1..]);
            let e = random_vec(table.dim(d3), &s);
            let left = table.mul(d1 + d2, &table.mul(d1, &a, d2, &b), d3, &e);
            let right = table.mul(d1, &a, d2 + d3, &table.mul(d2, &b, d3, &e));
            prop_assert_eq!(left, right);
            Ok(())
        },
    )
}

pub fn resolutions_are_minimal_complexes(cases: u32) -> Result<(), String> {
    check(cases, case(), |c| {
        let fx = c.fixture();
        let table = BasisTable::build(&fx.presentation, c.n).unwrap();
        let k = TrivialModule::new(table.field().clone(), c.n);
        for side in [Side::Left, Side::Right] {
            let res = Resolution::compute(&table, &k, side, 3);
            prop_assert!(res.check_complex());
            prop_assert!(res.check_minimal());
            prop_assert!(res.euler_identity_holds());
        }
        // A as a module over its invariant ring.
        let acts = DegreeActions::new(&fx.action, &table).unwrap();
        let ring = InvariantRing::from_actions(&acts);
        let inclusion: Vec<Vec<SparseVec>> = (0..=c.n).map(|d| ring.basis(d).to_vec()).collect();
        let a_over_r = RestrictedModule::new(&table, inclusion, Side::Right);
        let res = Resolution::compute(&ring, &a_over_r, Side::Right, 2);
        prop_assert!(res.check_complex());
        prop_assert!(res.check_minimal());
        Ok(())
    })
}

pub fn tau_is_one_more_than_module_generation_degree(cases: u32) -> Result<(), String> {
    check(cases, case(), |c| {
        let fx = c.fixture();
        let r = analyze(&fx, &[Command::HilbertIdeal]).unwrap();
        let h = r.hilbert_ideal.unwrap();
        for side in [&h.left, &h.right] {
            if let Some(tau) = side.tau.value {
                prop_assert_eq!(side.t0.map(|t| t + 1), Some(tau));
            }
            let top = side.module_generators.iter().map(|e| e.degree).max();
            prop_assert_eq!(top, side.t0);
        }
        Ok(())
    })
}

pub fn certified_bound_rows_are_never_violated(cases: u32) -> Result<(), String> {
    check(cases, case(), |c| {
        let fx = c.fixture();
        let r = analyze(&fx, &[Command::CheckBounds]).unwrap();
        let b = r.bounds.unwrap();
        let bad: Vec<_> = b.certified_violations().map(|row| row.id.clone()).collect();
        prop_assert!(bad.is_empty(), "{:?}", bad);
        Ok(())
    })
}

pub fn fitted_series_reproduce_their_coefficients(cases: u32) -> Result<(), String> {
    check(
        cases,
        (
            prop::collection::vec(1usize..=3, 1..=3),
            prop::collection::vec(0i64..=3, 0..=3),
        ),
        |(parts, num)| {
            let mut numerator = vec![1i64];
            numerator.extend(num);
            let den = product_denominator(&parts);
            let len = parts.iter().sum::<usize>() + numerator.len() + 8;
            // Power series of numerator / Π(1 − t^a) by repeated partial sums.
            let mut coeffs: Vec<i64> = (0..len)
                .map(|i| numerator.get(i).copied().unwrap_or(0))
                .collect();
            for &a in &parts {
                for i in a..len {
                    coeffs[i] += coeffs[i - a];
                }
            }
            let dims: Vec<usize> = coeffs.iter().map(|&c| c as usize).collect();
            let fit = HilbertSeries::fit(&dims, &den, 2).unwrap();
            prop_assert!(fit.matches(&dims));
            let expanded = fit.expand(len);
            for (e, d) in expanded.iter().zip(&dims) {
                prop_assert_eq!(e, &BigRational::from_integer(BigInt::from(*d)));
            }
            let auto = HilbertSeries::fit_auto(&dims, 2, 3).unwrap();
            prop_assert!(auto.matches(&dims));
            Ok(())
        },
    )
}

pub fn d_is_monotone_away_from_t2(cases: u32) -> Result<(), String> {
    check(
        cases,
        (
            prop::collection::vec(0i64..8, 6),
            prop::collection::vec(0i64..8, 5),
            0i64..8,
            1usize..=3,
            0usize..12,
        ),
        |(base, ta, q, i, bump_at)| {
            let seq = |v: &[i64]| -> TSeq { v.iter().map(|&x| Some(Val::int(x, true))).collect() };
            let tb = seq(&base);
            let tas = seq(&ta);
            let quotient = Val::int(q, true);
            let d0 = d_value(i, &quotient, &tb, Some(&tas), true).unwrap();
            let (q2, tb2, ta2) = match bump_at {
                0 => (Val::int(q + 1, true), tb.clone(), tas.clone()),
                k if k <= 5 => {
                    prop_assume!(k != 2);
                    let mut v = base.clone();
                    v[k] += 1;
                    (quotient.clone(), seq(&v), tas.clone())
                }
                k => {
                    let mut v = ta.clone();
                    v[(k - 6) % 5] += 1;
                    (quotient.clone(), tb.clone(), seq(&v))
                }
            };
            let d1 = d_value(i, &q2, &tb2, Some(&ta2), true).unwrap();
            prop_assert!(d1.value >= d0.value);
            prop_assert!(d0.value > ExtRat::NegInf);
            Ok(())
        },
    )
}

pub fn hopf_measuring_on_h8(cases: u32) -> Result<(), String> {
    let fx = fixtures::load("ex3.7", None).unwrap().compile().unwrap();
    let n = 4;
    let table = BasisTable::build(&fx.presentation, n).unwrap();
    let acts = DegreeActions::new(&fx.action, &table).unwrap();
    let hopf = &fx.action.hopf;
    check(
        cases,
        (0usize..=2, 0usize..=2, 0usize..16, 0usize..16),
        |(d1, d2, a, b)| {
            let x = unit(a % table.dim(d1), &table);
            let y = unit(b % table.dim(d2), &table);
            let xy = table.mul(d1, &x, d2, &y);
            for h in 0..hopf.dim() {
                let lhs = acts.act(&unit(h, &table), d1 + d2, &xy);
                let mut rhs = SparseVec::new();
                for (j, k, coef) in &hopf.coproduct[h] {
                    let l = acts.act(&unit(*j, &table), d1, &x);
                    let r = acts.act(&unit(*k, &table), d2, &y);
                    rhs = rhs.axpy(coef, &table.mul(d1, &l, d2, &r));
                }
                prop_assert_eq!(lhs, rhs);
            }
            for d in 0..=n {
                let p = acts.reynolds_projector(d);
                for col in &p {
                    prop_assert_eq!(&apply_columns(&p, col), col);
                }
            }
            Ok(())
        },
    )
}
