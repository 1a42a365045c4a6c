//! Library results checked against independent computations done here by hand.

use std::collections::BTreeMap;

use ncinv_core::algebra::{AlgebraPresentation, BasisTable, GradedAlgebra};
use ncinv_core::field::Field;
use ncinv_core::fixtures;
use ncinv_core::homology::{Resolution, TrivialModule};
use ncinv_core::hopf::{ActionData, DegreeActions};
use ncinv_core::invariants::{HilbertIdeal, InvariantRing, Side};
use ncinv_core::linalg::SparseVec;
use ncinv_core::pipeline::{analyze, Command};

fn q() -> Field {
    Field::rationals()
}

fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<ncinv_core::field::Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| q().from_int(x)).collect())
        .collect()
}

/// Invariant dimensions of a diagonal sign action on a PBW-type monomial basis, by averaging traces.
fn sign_average(basis: &[Vec<(usize, bool)>]) -> Vec<usize> {
    basis
        .iter()
        .map(|monos| {
            let trace: i64 = monos.iter().map(|&(_, odd)| if odd { -1 } else { 1 }).sum();
            ((monos.len() as i64 + trace) / 2) as usize
        })
        .collect()
}

#[test]
fn down_up_dimensions_from_pbw_basis() {
    // x^i (yx)^j y^k is a basis of the down-up algebra A(0, 1); sign on x contributes (−1)^{i+j}.
    let n = 8;
    let mut by_degree = vec![Vec::new(); n + 1];
    for i in 0..=n {
        for j in 0..=n / 2 {
            for k in 0..=n {
                let d = i + 2 * j + k;
                if d <= n {
                    by_degree[d].push((d, (i + j) % 2 == 1));
                }
            }
        }
    }
    let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &["x^2y - yx^2", "xy^2 - y^2x"])
        .unwrap();
    let table = BasisTable::build(&p, n).unwrap();
    let dims: Vec<usize> = by_degree.iter().map(Vec::len).collect();
    assert_eq!(table.dims(), dims);
    let action = ActionData::from_group(&p, &[int_matrix(&[&[-1, 0], &[0, 1]])], 100).unwrap();
    let acts = DegreeActions::new(&action, &table).unwrap();
    let ring = InvariantRing::from_actions(&acts);
    assert_eq!(ring.dims(), sign_average(&by_degree));
}

#[test]
fn skew_swap_invariants_from_character() {
    // On k_{−1}[x,y] the swap sends x^i y^j to (−1)^{ij} x^j y^i; only i = j contributes to the trace.
    let n = 10;
    let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &["xy + yx"]).unwrap();
    let table = BasisTable::build(&p, n).unwrap();
    let action = ActionData::from_group(&p, &[int_matrix(&[&[0, 1], &[1, 0]])], 100).unwrap();
    let acts = DegreeActions::new(&action, &table).unwrap();
    let ring = InvariantRing::from_actions(&acts);
    let oracle: Vec<usize> = (0..=n)
        .map(|d| {
            let trace: i64 = if d % 2 == 0 {
                if (d / 2) % 2 == 0 {
                    1
                } else {
                    -1
                }
            } else {
                0
            };
            ((d as i64 + 1 + trace) / 2) as usize
        })
        .collect();
    assert_eq!(ring.dims(), oracle);
    assert_eq!(ring.generator_degrees(), vec![1, 3]);
}

#[test]
fn veronese_invariants_are_monomials_of_degree_divisible_by_m() {
    for m in 2..=5usize {
        let doc = fixtures::load("ex1.2.1", Some(m)).unwrap();
        let fx = doc.compile().unwrap();
        let r = analyze(&fx, &[Command::Invariants]).unwrap();
        let inv = r.invariants.unwrap();
        let oracle: Vec<usize> = (0..inv.dims.len())
            .map(|d| if d % m == 0 { d + 1 } else { 0 })
            .collect();
        assert_eq!(inv.dims, oracle, "m = {m}");
        assert_eq!(inv.beta.value, Some(m));
        assert!(inv.generators.iter().all(|g| g.degree == m));
        assert_eq!(inv.generators.len(), m + 1);
    }
}

#[test]
fn free_algebra_sign_invariants_by_word_enumeration() {
    let n = 7;
    let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &[]).unwrap();
    let table = BasisTable::build(&p, n).unwrap();
    let action = ActionData::from_group(&p, &[int_matrix(&[&[-1, 0], &[0, 1]])], 100).unwrap();
    let acts = DegreeActions::new(&action, &table).unwrap();
    let ring = InvariantRing::from_actions(&acts);
    let oracle: Vec<usize> = (0..=n)
        .map(|d| (0..1usize << d).filter(|w| w.count_ones() % 2 == 0).count())
        .collect();
    assert_eq!(ring.dims(), oracle);

    // Words outside A·R₊ are exactly 1 and y^k x.
    let left = HilbertIdeal::compute(&ring, Side::Left);
    let (tau, cert) = left.tau(&table);
    assert_eq!(tau, None);
    assert!(!cert.is_certified());
    let r = analyze(
        &fixtures::load("ex1.3", None).unwrap().compile().unwrap(),
        &[Command::HilbertIdeal],
    )
    .unwrap();
    let h = r.hilbert_ideal.unwrap();
    assert_eq!(h.left.quotient_dims, vec![1; n + 1]);
    let mut expected = vec!["1".to_string(), "x".to_string(), "yx".to_string()];
    expected.extend((2..n).map(|k| format!("y^{k}x")));
    let got: Vec<String> = h
        .left
        .module_generators
        .iter()
        .map(|e| e.element.clone())
        .collect();
    assert_eq!(got, expected);
}

#[test]
fn koszul_complex_of_skew_plane() {
    // 0 → A(−2) → A(−1)² → A → k → 0
    let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &["xy + yx"]).unwrap();
    let table = BasisTable::build(&p, 8).unwrap();
    let k = TrivialModule::new(q(), 8);
    let res = Resolution::compute(&table, &k, Side::Left, 4);
    let b = res.betti();
    let ranks: Vec<usize> = (0..=4).map(|i| b.rank(i)).collect();
    assert_eq!(ranks, vec![1, 2, 1, 0, 0]);
    assert_eq!(b.ts(), vec![Some(0), Some(1), Some(2), None, None]);
    assert!(res.check_complex() && res.check_minimal());
}

#[test]
fn down_up_resolution_shape() {
    // A(0,1) is AS regular of dimension 3 with relations in degree 3: shifts 0 | 1 1 | 3 3 | 4.
    let p = AlgebraPresentation::parse(q(), &[("x", 1), ("y", 1)], &["x^2y - yx^2", "xy^2 - y^2x"])
        .unwrap();
    let table = BasisTable::build(&p, 7).unwrap();
    let k = TrivialModule::new(q(), 7);
    let res = Resolution::compute(&table, &k, Side::Left, 4);
    let shifts: Vec<Vec<usize>> = res.steps.iter().map(|s| s.shifts.clone()).collect();
    assert_eq!(shifts[..4], [vec![0], vec![1, 1], vec![3, 3], vec![4]]);
}

// Words over {u, v} with rational coefficients.
type Poly = BTreeMap<String, (i64, i64)>;

fn add(p: &mut Poly, w: String, c: (i64, i64)) {
    let e = p.entry(w).or_insert((0, 1));
    let (n, d) = (e.0 * c.1 + c.0 * e.1, e.1 * c.1);
    let g = gcd(n.abs(), d.abs()).max(1);
    *e = (n / g, d / g);
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Generator action of the group-like and z elements of H8 on span(u, v).
fn h8_on_letter(h: &str, l: char) -> (i64, char) {
    match (h, l) {
        ("1", l) => (1, l),
        ("x", 'u') => (-1, 'u'),
        ("x", 'v') => (1, 'v'),
        ("y", 'u') => (1, 'u'),
        ("y", 'v') => (-1, 'v'),
        ("z", 'u') => (1, 'v'),
        ("z", 'v') => (1, 'u'),
        ("xz", l) => {
            let (s, m) = h8_on_letter("z", l);
            let (t, m) = h8_on_letter("x", m);
            (s * t, m)
        }
        ("yz", l) => {
            let (s, m) = h8_on_letter("z", l);
            let (t, m) = h8_on_letter("y", m);
            (s * t, m)
        }
        _ => unreachable!(),
    }
}

/// z · (ab) with Δ(z) = ½(z⊗z + z⊗xz + yz⊗z − yz⊗xz), for letters a, b.
fn z_on_pair(a: char, b: char) -> Poly {
    let mut out = Poly::new();
    for (h1, h2, c) in [
        ("z", "z", 1),
        ("z", "xz", 1),
        ("yz", "z", 1),
        ("yz", "xz", -1),
    ] {
        let (s, l1) = h8_on_letter(h1, a);
        let (t, l2) = h8_on_letter(h2, b);
        add(&mut out, format!("{l1}{l2}"), (c * s * t, 2));
    }
    out.retain(|_, c| c.0 != 0);
    out
}

fn render(p: &Poly) -> String {
    let mut s = String::new();
    for (w, (n, d)) in p {
        let sign = if *n < 0 { "-" } else { "+" };
        let mag = if *d == 1 {
            format!("{}", n.abs())
        } else {
            format!("({}/{})", n.abs(), d)
        };
        s.push_str(&format!(" {sign} {mag}{w}"));
    }
    s.trim_start_matches(" + ").to_string()
}

#[test]
fn h8_measuring_matches_hand_coproduct() {
    let doc = fixtures::load("ex3.7", None).unwrap();
    let fx = doc.compile().unwrap();
    let table = BasisTable::build(&fx.presentation, 3).unwrap();
    let acts = DegreeActions::new(&fx.action, &table).unwrap();
    acts.validate_action().unwrap();
    let z = fx.action.hopf.labels.iter().position(|l| l == "z").unwrap();
    let hz = SparseVec::unit(z, q().one());
    for (a, b) in [('u', 'v'), ('v', 'u'), ('u', 'u'), ('v', 'v')] {
        let oracle = z_on_pair(a, b);
        let (_, lhs) = table.element(&format!("{a}{b}")).unwrap();
        let got = acts.act(&hz, 2, &lhs);
        let (_, want) = table.element(&render(&oracle)).unwrap();
        assert_eq!(got, want, "z . {a}{b}");
    }
    // z · (uv + vu) = uv − vu
    let (_, s) = table.element("uv + vu").unwrap();
    let (_, want) = table.element("uv - vu").unwrap();
    assert_eq!(acts.act(&hz, 2, &s), want);
}

#[test]
fn veronese_hilbert_ratio_is_m() {
    // h_A = 1/(1−t)², h_R = (1 + (m−1)t^m)/(1−t^m)², so h_A/h_R → m at t = 1.
    for m in 2..=5usize {
        let fx = fixtures::load("ex1.2.1", Some(m))
            .unwrap()
            .compile()
            .unwrap();
        let r = analyze(&fx, &[Command::Series]).unwrap();
        assert_eq!(
            r.series.unwrap().ratio_at_one.as_deref(),
            Some(m.to_string().as_str())
        );
    }
    let fx = fixtures::load("sign-kx", None).unwrap().compile().unwrap();
    let r = analyze(&fx, &[Command::Series]).unwrap();
    assert_eq!(r.series.unwrap().ratio_at_one.as_deref(), Some("2"));
}
