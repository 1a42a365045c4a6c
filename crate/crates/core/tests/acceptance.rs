//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::time::{Duration, Instant};

use ncinv_core::algebra::{AlgebraPresentation, BasisTable};
use ncinv_core::field::Field;
use ncinv_core::fixtures;
use ncinv_core::homology::{Resolution, TrivialModule};
use ncinv_core::invariants::Side;
use ncinv_core::pipeline::{analyze, reproduce, Command, Fixture, Quantity, Report};

type Outcome = Result<String, String>;

fn fixture(id: &str, m: Option<usize>) -> Fixture {
    fixtures::load(id, m)
        .and_then(|d| d.compile())
        .unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn run(fx: &Fixture, cmds: &[Command]) -> Result<Report, String> {
    analyze(fx, cmds).map_err(|e| e.to_string())
}

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn certified(q: &Quantity, v: usize, name: &str) -> Result<(), String> {
    ensure(
        q.value == Some(v) && q.certification.is_certified(),
        format!(
            "{name} = {:?} [{}], want {v} certified",
            q.value,
            q.certification.label()
        ),
    )
}

fn down_up() -> Outcome {
    let start = Instant::now();
    let fx = fixture("ex3.4", None);
    let r = run(&fx, &[Command::Invariants, Command::Tau])?;
    let inv = r.invariants.as_ref().unwrap();
    ensure(
        inv.dims[1..=3] == [1, 2, 3],
        format!("invariant dims {:?}", &inv.dims[1..=3]),
    )?;
    let tau = r.tau.as_ref().unwrap();
    certified(&tau.tau, 3, "tau")?;
    certified(&tau.tau_op, 3, "tau_op")?;
    certified(&inv.beta, 3, "beta")?;
    ensure(
        inv.generators
            .iter()
            .any(|g| g.degree == 3 && g.element == "xyx"),
        "xyx is not a degree-3 generator",
    )?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), format!("took {t:?}"))?;
    Ok(format!(
        "dims 1 2 3, tau = tau_op = beta = 3 certified, xyx generator, {:.2}s",
        t.as_secs_f64()
    ))
}

fn skew_swap() -> Outcome {
    let fx = fixture("ex1.2.3", None);
    let r = run(
        &fx,
        &[Command::Invariants, Command::Tau, Command::CheckBounds],
    )?;
    let inv = r.invariants.as_ref().unwrap();
    let mut degs: Vec<usize> = inv.generators.iter().map(|g| g.degree).collect();
    degs.dedup();
    ensure(degs == [1, 3], format!("generator degrees {degs:?}"))?;
    certified(&inv.beta, 3, "beta")?;
    certified(&r.tau.as_ref().unwrap().tau, 3, "tau")?;
    let b = r.bounds.as_ref().unwrap();
    let row = b.row("beta_le_skew_bound").ok_or("row missing")?;
    let shown = format!(
        "{} <= {}",
        row.lhs.as_ref().map_or("-".into(), |v| v.to_string()),
        row.rhs.as_ref().map_or("-".into(), |v| v.to_string())
    );
    ensure(
        shown == "3 <= 6" && format!("{:?}", row.status) == "Holds",
        format!("skew row {shown} {:?}", row.status),
    )?;
    Ok(format!(
        "generators in degrees {{1, 3}}, beta = tau = 3, skew bound {shown}"
    ))
}

fn veronese() -> Outcome {
    let start = Instant::now();
    for m in 2..=5usize {
        let fx = fixture("ex1.2.1", Some(m));
        let r = run(
            &fx,
            &[Command::Invariants, Command::Tau, Command::HilbertIdeal],
        )?;
        let tau = r.tau.as_ref().unwrap();
        certified(&tau.tau, m, "tau")?;
        certified(&tau.tau_op, m, "tau_op")?;
        certified(&r.invariants.as_ref().unwrap().beta, m, "beta")?;
        let h = r.hilbert_ideal.as_ref().unwrap();
        for side in [&h.left, &h.right] {
            for (d, &q) in side.quotient_dims.iter().enumerate() {
                let want = if d < m { d + 1 } else { 0 };
                ensure(
                    q == want,
                    format!("m = {m}: dim (A/J)_{d} = {q}, want {want}"),
                )?;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), format!("took {t:?}"))?;
    Ok(format!(
        "m = 2..5: tau = tau_op = beta = m, J_d = 0 below m and A_d from m, {:.2}s",
        t.as_secs_f64()
    ))
}

fn free_algebra() -> Outcome {
    let fx = fixture("ex1.3", None);
    let r = run(&fx, &[Command::Invariants, Command::HilbertIdeal])?;
    let gens: Vec<String> = r
        .invariants
        .as_ref()
        .unwrap()
        .generators
        .iter()
        .map(|g| g.element.clone())
        .collect();
    let mut want = vec!["y".to_string(), "x^2".into(), "xyx".into()];
    want.extend((2..=5).map(|k| format!("xy^{k}x")));
    ensure(gens == want, format!("generators {gens:?}"))?;
    let h = r.hilbert_ideal.as_ref().unwrap();
    let mods: Vec<String> = h
        .left
        .module_generators
        .iter()
        .map(|e| e.element.clone())
        .collect();
    let mut want = vec!["1".to_string(), "x".into(), "yx".into()];
    want.extend((2..=5).map(|k| format!("y^{k}x")));
    ensure(
        mods.starts_with(&want),
        format!("module generators {mods:?}"),
    )?;
    ensure(
        mods[want.len()..] == ["y^6x"],
        format!("extra module generators {:?}", &mods[want.len()..]),
    )?;
    ensure(
        h.left.quotient_dims.iter().all(|&q| q > 0),
        "A/J vanishes somewhere",
    )?;
    ensure(h.left.quotient_dims.len() == 8, "wrong truncation")?;
    Ok("generators y, x^2, xyx, ..., xy^5x; module generators 1, x, yx, ..., y^5x (and y^6x in degree 7); A/J nonzero through 7".into())
}

fn truncated_chain() -> Outcome {
    let mut out = Vec::new();
    for m in [4usize, 5] {
        let fx = fixture("ex3.6", Some(m));
        let (r, mism) = reproduce(&fx).map_err(|e| e.to_string())?;
        ensure(mism.is_empty(), format!("{mism:?}"))?;
        let t = r.truncated.as_ref().ok_or("no truncated section")?;
        ensure(
            t.beta == Some(m - 1),
            format!("m = {m}: truncated beta {:?}", t.beta),
        )?;
        ensure(
            t.agrees_with_free_below,
            format!("m = {m}: disagrees with the free algebra below m"),
        )?;
        out.push(format!("m = {m}: beta = {}", m - 1));
    }
    Ok(out.join(", "))
}

fn h8() -> Outcome {
    let fx = fixture("ex3.7", None);
    let r = run(&fx, &[Command::Validate])?;
    let v = r.validation.as_ref().unwrap();
    ensure(v.hopf_valid, "Hopf axioms fail")?;
    ensure(v.action_valid, "action invalid")?;
    let row = v
        .element_actions
        .iter()
        .find(|e| e.by == "z" && e.element == "uv + vu")
        .ok_or("z . (uv + vu) not evaluated")?;
    ensure(
        row.matches && row.expected == "uv - vu",
        format!("z . (uv + vu) = {}", row.image),
    )?;
    let bad = fixtures::load("ex3.7-bad-integral", None)
        .unwrap()
        .compile();
    ensure(
        bad.as_ref().is_err_and(|e| e.exit_code() == 2),
        "bad integral accepted",
    )?;
    Ok(format!(
        "H8 valid, action valid, z . (uv + vu) = {}",
        row.image
    ))
}

fn ratio() -> Outcome {
    let mut out = Vec::new();
    let fx = fixture("sign-kx", None);
    let r = run(&fx, &[Command::Series])?;
    let q = r.series.unwrap().ratio_at_one;
    ensure(
        q.as_deref() == Some("2"),
        format!("k[x] / k[x^2] ratio {q:?}"),
    )?;
    out.push("k[x]/k[x^2]: 2".to_string());
    for m in 2..=5usize {
        let fx = fixture("ex1.2.1", Some(m));
        let r = run(&fx, &[Command::Series])?;
        let q = r.series.unwrap().ratio_at_one;
        ensure(
            q.as_deref() == Some(m.to_string().as_str()),
            format!("Veronese m = {m}: {q:?}"),
        )?;
        out.push(format!("m={m}: {m}"));
    }
    Ok(out.join(", "))
}

fn homology() -> Outcome {
    let f = Field::rationals();
    let p = AlgebraPresentation::parse(f.clone(), &[("x", 1), ("y", 1)], &["xy + yx"])
        .map_err(|e| e.to_string())?;
    let table = BasisTable::build(&p, 8).map_err(|e| e.to_string())?;
    let k = TrivialModule::new(f, 8);
    let res = Resolution::compute(&table, &k, Side::Left, 4);
    let ts = res.betti().ts();
    ensure(
        ts == [Some(0), Some(1), Some(2), None, None],
        format!("skew plane t = {ts:?}"),
    )?;

    let fx = fixture("ex3.4", None);
    let r = run(&fx, &[Command::Resolve, Command::Cmreg])?;
    let kt = r
        .resolutions
        .as_ref()
        .unwrap()
        .iter()
        .find(|x| x.name == "k over T")
        .ok_or("no resolution")?;
    ensure(
        kt.t[..4] == [Some(0), Some(1), Some(3), Some(4)] && kt.certified,
        format!("down-up t = {:?}", kt.t),
    )?;
    let c = &r.cmreg.as_ref().unwrap().algebra;
    ensure(
        c.value == Some(-1) && c.certified,
        format!("cmreg {:?}", c.value),
    )?;
    Ok(
        "k_{-1}[x,y]: t_i = i for i <= 2, Tor_3 = Tor_4 = 0; down-up: t = 0 1 3 4, cmreg = -1"
            .into(),
    )
}

fn phi() -> Outcome {
    let fx = fixture("ex3.4", None);
    let r = run(&fx, &[Command::Basis])?;
    let b = r.basis.unwrap();
    let p2 = b.phi.iter().find(|p| p.n == 2).ok_or("no phi_2")?;
    let p3 = b.phi.iter().find(|p| p.n == 3).ok_or("no phi_3")?;
    ensure(
        p2.first_difference == Some(3),
        format!("phi_2 first difference {:?}", p2.first_difference),
    )?;
    ensure(
        p3.first_difference.is_none() && p3.dims.len() >= 7,
        format!("phi_3 {:?}", p3.first_difference),
    )?;
    Ok("phi_2 differs first at degree 3, phi_3 agrees through 6".into())
}

fn properties() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, suite) in common::SUITES {
        if let Err(e) = suite(128) {
            failed.push(format!("{name}: {e}"));
        }
    }
    let t = start.elapsed();
    ensure(failed.is_empty(), failed.join("; "))?;
    ensure(t < Duration::from_secs(120), format!("took {t:?}"))?;
    Ok(format!(
        "{} suites x 128 cases, seed {:#x}, {:.1}s",
        common::SUITES.len(),
        common::SEED,
        t.as_secs_f64()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("down-up algebra under a sign", down_up),
        ("swap on k_{-1}[x,y]", skew_swap),
        ("Veronese m = 2..5", veronese),
        ("sign on the free algebra", free_algebra),
        ("truncated enveloping algebras", truncated_chain),
        ("H8 action", h8),
        ("Hilbert series ratio", ratio),
        ("Tor degrees and CM regularity", homology),
        ("Phi_n comparison", phi),
        ("property suites", properties),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{secs:.2}s]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {msg} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
