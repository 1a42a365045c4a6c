use std::fmt::Write as _;

use ncinv_core::pipeline::{Element, HilbertIdealSide, Quantity, Report, SeriesFit};

use crate::RunReport;

fn quantity(q: &Quantity) -> String {
    match q.value {
        Some(v) => format!("{v} [{}]", q.certification.label()),
        None => format!("not reached [{}]", q.certification.label()),
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn opt_list(xs: &[Option<usize>]) -> String {
    xs.iter()
        .map(|x| x.map_or("-".to_string(), |v| v.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn elements(es: &[Element]) -> String {
    es.iter()
        .map(|e| format!("{} (deg {})", e.element, e.degree))
        .collect::<Vec<_>>()
        .join(", ")
}

fn series(s: &SeriesFit) -> String {
    match (&s.series, &s.error) {
        (Some(s), _) => format!(
            "({}) / ({})  a = {}, verified to {}",
            s.numerator, s.denominator, s.a_invariant, s.verified_to
        ),
        (None, Some(e)) => format!("no fit: {e}"),
        _ => "-".into(),
    }
}

fn side(out: &mut String, label: &str, s: &HilbertIdealSide) {
    let _ = writeln!(out, "  {label}: A/J dims {}", list(&s.quotient_dims));
    let _ = writeln!(out, "    tau = {}", quantity(&s.tau));
    let _ = writeln!(
        out,
        "    module generators: {}",
        elements(&s.module_generators)
    );
}

pub fn render(rr: &RunReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "ncinv {}  {}  {}  (N = {}, P = {})",
        rr.version,
        rr.command,
        rr.input.source,
        rr.truncation.max_degree,
        rr.truncation.max_homological
    );
    if let Some(e) = &rr.error {
        let _ = writeln!(s, "error: {e}");
    }
    if let Some(r) = &rr.report {
        report(&mut s, r);
    }
    if let Some(m) = &rr.mismatches {
        if m.is_empty() {
            let _ = writeln!(s, "golden values: all match");
        }
        for x in m {
            let _ = writeln!(
                s,
                "MISMATCH {}: expected {}, got {}",
                x.field, x.expected, x.actual
            );
        }
    }
    if let Some(t) = rr.timing_ms {
        let _ = writeln!(s, "time: {t:.1} ms");
    }
    let _ = writeln!(s, "status: {} (exit {})", rr.status, rr.exit_code);
    s
}

fn report(s: &mut String, r: &Report) {
    let _ = writeln!(s, "field: {}", r.field);
    if let Some(v) = &r.validation {
        let _ = writeln!(
            s,
            "hopf algebra: dim {}, axioms {}",
            v.hopf_dim,
            if v.hopf_valid { "ok" } else { "FAIL" }
        );
        for a in v.hopf_axioms.iter().filter(|a| !a.passed) {
            let _ = writeln!(s, "  failed: {}", a.axiom);
        }
        if let Some(g) = v.group_order {
            let _ = writeln!(s, "group order: {g}");
        }
        let _ = writeln!(s, "action: {}", if v.action_valid { "ok" } else { "FAIL" });
        if let Some(e) = &v.action_error {
            let _ = writeln!(s, "  {e}");
        }
        for e in &v.element_actions {
            let _ = writeln!(
                s,
                "  {} . ({}) = {}{}",
                e.by,
                e.element,
                e.image,
                if e.matches {
                    ""
                } else {
                    "  (expected differs)"
                }
            );
        }
    }
    if let Some(b) = &r.basis {
        let _ = writeln!(s, "algebra dims: {}", list(&b.dims));
        for (d, w) in b.words.iter().enumerate() {
            let _ = writeln!(s, "  degree {d}: {}", w.join(" "));
        }
        for p in &b.phi {
            let diff = p
                .first_difference
                .map_or("none".to_string(), |d| d.to_string());
            let _ = writeln!(
                s,
                "phi_{}: dims {}  first difference at {diff}",
                p.n,
                list(&p.dims)
            );
        }
    }
    if let Some(i) = &r.invariants {
        let _ = writeln!(s, "invariant dims: {}", list(&i.dims));
        let _ = writeln!(s, "generators: {}", elements(&i.generators));
        let _ = writeln!(s, "beta = {}", quantity(&i.beta));
    } else if let Some(b) = &r.beta {
        let _ = writeln!(s, "beta = {}", quantity(b));
    }
    if let Some(t) = &r.tau {
        let _ = writeln!(s, "tau = {}", quantity(&t.tau));
        let _ = writeln!(s, "tau_op = {}", quantity(&t.tau_op));
    }
    if let Some(h) = &r.hilbert_ideal {
        let _ = writeln!(s, "hilbert ideal:");
        side(s, "J = A R+", &h.left);
        side(s, "J = R+ A", &h.right);
    }
    if let Some(x) = &r.series {
        let _ = writeln!(s, "series of A: {}", series(&x.algebra));
        let _ = writeln!(s, "series of R: {}", series(&x.invariants));
        if let Some(q) = &x.ratio_at_one {
            let _ = writeln!(s, "(h_A / h_R)(1) = {q}, dim H = {}", x.dim_h);
        }
    }
    if let Some(rs) = &r.resolutions {
        for x in rs {
            let _ = writeln!(
                s,
                "resolution {}: t = {}{}  checks: complex {} minimal {} euler {}",
                x.name,
                opt_list(&x.t),
                if x.certified { " [certified]" } else { "" },
                x.checks.complex,
                x.checks.minimal,
                x.checks.euler
            );
        }
    }
    if let Some(bs) = &r.betti {
        for b in bs {
            let _ = writeln!(s, "betti table of {}:\n{}", b.name, b.text);
        }
    }
    if let Some(ts) = &r.torreg {
        for t in ts {
            let v = t.value.map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(s, "torreg {}: {v} [{}]", t.name, t.status);
        }
    }
    if let Some(c) = &r.cmreg {
        for (label, v) in std::iter::once(("A", Some(&c.algebra)))
            .chain(std::iter::once(("S", c.second_algebra.as_ref())))
        {
            if let Some(v) = v {
                let val = v.value.map_or("-".to_string(), |x| x.to_string());
                let cert = if v.certified { "certified" } else { "observed" };
                let _ = writeln!(s, "cmreg {label}: {val} [{cert}, {}]", v.by);
            }
        }
    }
    if let Some(a) = &r.annihilators {
        for row in a.per_index.iter().chain(a.infinity.iter()) {
            let i = if row.i == usize::MAX {
                "inf".to_string()
            } else {
                row.i.to_string()
            };
            let deg = row
                .quotient_degree
                .map_or("-inf".to_string(), |d| d.to_string());
            let _ = writeln!(
                s,
                "annihilator {i}: A/J dims {}  degree {deg}{}",
                opt_list(&row.quotient_dims),
                if row.complete { "" } else { " (incomplete)" }
            );
        }
    }
    if let Some(t) = &r.truncated {
        let _ = writeln!(
            s,
            "truncated at {}: invariant dims {}  generator degrees {}  beta {}  free beta {}",
            t.at,
            list(&t.invariant_dims),
            list(&t.generator_degrees),
            t.beta.map_or("-".into(), |b| b.to_string()),
            t.free_beta.map_or("-".into(), |b| b.to_string()),
        );
    }
    if let Some(src) = &r.second_algebra {
        let _ = writeln!(
            s,
            "second algebra dims: {}  image ranks: {}",
            list(&src.dims),
            list(&src.image_ranks)
        );
    }
    if let Some(b) = &r.bounds {
        let _ = write!(s, "{}", b.render());
    }
}
