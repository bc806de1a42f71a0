//! Acceptance run: one PASS/FAIL line per criterion, exact comparisons only.
//! Exits nonzero when any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use modinv_core::engine::*;
use modinv_core::families::*;
use modinv_core::groups::{brute_force_group, build_group, is_invariant};
use modinv_core::series::two_generator_series;
use modinv_core::{Error, FieldContext, GroupKind, Ring};

type Outcome = Result<Vec<String>, String>;

fn setup(s: u32, m: usize, kind: GroupKind) -> Result<(Ring, InvariantRing), Error> {
    let f = Arc::new(FieldContext::new(s)?);
    let t = build_group(&f, kind)?;
    let r = Ring::new(f, m)?;
    Ok((r.clone(), InvariantRing::new(r, t)?))
}

fn e(err: Error) -> String {
    err.to_string()
}

/// Collects failures; `ensure` records a message when `ok` is false.
#[derive(Default)]
struct Findings {
    notes: Vec<String>,
    failures: Vec<String>,
}

impl Findings {
    fn ensure(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }

    fn verdict(&mut self, label: &str, report: &GradedReport, name: &str, want: Status) {
        match report.verdict(name) {
            Some(v) if v.status == want => {}
            Some(v) => {
                let mut msg = format!("{label}: {name} is {} ({})", v.status.name(), v.detail);
                if let Some(w) = v.witnesses.first() {
                    msg.push_str(&format!("; witness {w}"));
                }
                self.failures.push(msg);
            }
            None => self.failures.push(format!("{label}: no verdict {name}")),
        }
    }

    fn timed(&mut self, label: &str, limit: Duration, start: Instant) {
        let took = start.elapsed();
        self.ensure(took < limit, format!("{label} took {took:?}, limit {limit:?}"));
    }

    fn done(self) -> Outcome {
        if self.failures.is_empty() {
            Ok(self.notes)
        } else {
            Err(self.failures.join("\n        "))
        }
    }
}

fn group_orders() -> Outcome {
    let mut f = Findings::default();
    for (s, kind, want) in [
        (2, GroupKind::Plus, 6),
        (2, GroupKind::Minus, 10),
        (3, GroupKind::Plus, 14),
        (3, GroupKind::Minus, 18),
    ] {
        let start = Instant::now();
        let field = Arc::new(FieldContext::new(s).map_err(e)?);
        let label = format!("{} over F_{}", kind.name(), 1 << s);
        let table = build_group(&field, kind).map_err(e)?;
        let brute = brute_force_group(&field, kind).map_err(e)?;
        f.ensure(table.order() == want, format!("{label}: {} elements, want {want}", table.order()));
        f.ensure(table.elements() == brute.as_slice(), format!("{label}: differs from brute force"));
        f.timed(&label, Duration::from_secs(1), start);
    }
    f.done()
}

fn univariate_plus() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for s in [2, 3] {
        let q = 1usize << s;
        let (_, mut inv) = setup(s, 1, GroupKind::Plus).map_err(e)?;
        let series = two_generator_series(2, q - 1, 20);
        for d in 0..=20 {
            let dim = inv.dim(d);
            f.ensure(dim as i64 == series[d], format!("q={q} d={d}: dim {dim}, series {}", series[d]));
        }
    }
    f.timed("univariate", Duration::from_secs(5), start);
    f.done()
}

fn invariance() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for s in [2, 3] {
        let q = 1usize << s;
        for m in [2, 3] {
            let (r, inv) = setup(s, m, GroupKind::Plus).map_err(e)?;
            let gens = plus_generators(&r).map_err(e)?.restrict(&[Family::N, Family::U, Family::B, Family::D]);
            let bad = gens.non_invariant(inv.table()).map_err(e)?;
            f.ensure(bad.is_empty(), format!("q={q} m={m}: not invariant: {bad:?}"));
            let mut off = 0;
            for alpha in multidegrees_up_to(m, 2 * (q - 1)) {
                let total: usize = alpha.iter().map(|&a| a as usize).sum();
                if total % (q - 1) == 0 {
                    continue;
                }
                off += 1;
                let b = b_alpha(&r, &alpha).map_err(e)?;
                f.ensure(!is_invariant(&r, inv.table(), &b).map_err(e)?, format!("q={q} m={m}: B{alpha:?} is invariant"));
            }
            f.note(format!("q={q} m={m}: {} generators, {off} off-degree B", gens.len()));
        }
    }
    f.timed("invariance", Duration::from_secs(10), start);
    f.done()
}

fn generation() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for (s, m, d) in [(2, 2, 16), (2, 3, 10), (3, 2, 12)] {
        let (r, mut inv) = setup(s, m, GroupKind::Plus).map_err(e)?;
        let gens = plus_generators(&r).map_err(e)?.minimal();
        let rep = generation_check(&mut inv, &gens, d).map_err(e)?;
        let label = format!("(q={}, m={m}, D={d})", 1 << s);
        for rec in &rep.degrees {
            f.ensure(
                rec.dim_closure == rec.dim_invariants,
                format!("{label} d={}: closure {:?}, invariants {:?}", rec.d, rec.dim_closure, rec.dim_invariants),
            );
        }
        f.verdict(&label, &rep, "generation", Status::Pass);
    }
    f.timed("generation", Duration::from_secs(120), start);
    f.done()
}

fn minimality() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for (s, m, want) in [(2, 2, 7), (2, 3, 16), (3, 3, 42)] {
        let (r, mut inv) = setup(s, m, GroupKind::Plus).map_err(e)?;
        let gens = plus_generators(&r).map_err(e)?.minimal();
        let (rep, data) = minimality_report(&mut inv, &gens, 8).map_err(e)?;
        let label = format!("(q={}, m={m})", 1 << s);
        f.ensure(data.total() == want, format!("{label}: {} minimal generators, want {want}", data.total()));
        f.ensure(gens.len() == want, format!("{label}: {} listed generators, want {want}", gens.len()));
        f.verdict(&label, &rep, "indecomposable", Status::Pass);
        f.verdict(&label, &rep, "minimal-count", Status::Pass);
    }
    f.timed("minimality", Duration::from_secs(180), start);
    f.done()
}

fn noether_numbers() -> Outcome {
    let mut f = Findings::default();
    for (s, m, d, want, limit) in [(2, 2, 8, 3, 60), (2, 3, 8, 3, 60), (2, 5, 7, 5, 600), (3, 2, 10, 7, 60)] {
        let start = Instant::now();
        let label = format!("(q={}, m={m}, D={d}){}", 1 << s, if m == 5 { " [slow]" } else { "" });
        let (r, mut inv) = setup(s, m, GroupKind::Plus).map_err(e)?;
        let gens = plus_generators(&r).map_err(e)?.minimal();
        let (rep, data) = minimality_report(&mut inv, &gens, d).map_err(e)?;
        f.ensure(data.noether() == Some(want), format!("{label}: Noether number {:?}, want {want}", data.noether()));
        let exact = rep.noether.as_ref().map(|n| n.exact);
        f.ensure(exact == Some(true), format!("{label}: not certified up to the cutoff"));
        f.timed(&label, Duration::from_secs(limit), start);
    }
    f.done()
}

fn free_module() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for s in [2, 3] {
        let q = 1usize << s;
        let (_, mut inv) = setup(s, 2, GroupKind::Plus).map_err(e)?;
        let rep = free_module_check(&mut inv, 2 * (q - 1) + 2).map_err(e)?;
        let label = format!("q={q}");
        for name in ["basis-size", "spanning", "series"] {
            f.verdict(&label, &rep, name, Status::Pass);
        }
        if q == 4 {
            f.verdict(&label, &rep, "cube-identity", Status::Pass);
            let emitted = rep.verdict("cube-identity").map(|v| v.witnesses.len() == 2).unwrap_or(false);
            f.ensure(emitted, "q=4: cube identity witnesses missing");
        }
        if let Some(v) = rep.verdict("U-power-basis") {
            f.note(format!("q={q}: U-power basis: {}", v.detail));
        }
    }
    f.timed("free module", Duration::from_secs(120), start);
    f.done()
}

fn hilbert_ideal() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for m in [2, 3] {
        let (_, mut inv) = setup(2, m, GroupKind::Plus).map_err(e)?;
        let rep = hilbert_ideal_check(&mut inv, 10).map_err(e)?;
        let label = format!("m={m}");
        f.verdict(&label, &rep, "ideal-equality", Status::Pass);
        f.verdict(&label, &rep, "degree-bound", Status::Pass);
    }
    f.timed("Hilbert ideal", Duration::from_secs(120), start);
    f.done()
}

fn transfer() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for m in [2, 3] {
        let (r, _) = setup(2, m, GroupKind::Plus).map_err(e)?;
        let bounds = TransferBounds::for_q(4);
        f.ensure(bounds.max_alpha == 6 && bounds.max_e == 4, "bounds differ from |alpha| <= 6, e <= 4");
        let rep = transfer_membership_suite(&r, bounds).map_err(e)?;
        let label = format!("m={m}");
        for v in &rep.verdicts {
            f.verdict(&label, &rep, &v.name, Status::Pass);
        }
        f.ensure(rep.verdicts.len() == 6, format!("{label}: {} verdicts, want 6", rep.verdicts.len()));
    }
    f.timed("transfer", Duration::from_secs(120), start);
    f.done()
}

fn identities() -> Outcome {
    let mut f = Findings::default();
    for s in [2, 3] {
        let q = 1usize << s;
        let (_, mut inv) = setup(s, 2, GroupKind::Plus).map_err(e)?;
        let rep = identity_suite(&mut inv).map_err(e)?;
        let label = format!("q={q}");
        for name in ["shift-identity", "v-recursion", "v-in-module", "B-products-in-module", "U-power-in-module"] {
            f.verdict(&label, &rep, name, Status::Pass);
        }
        f.verdict(&label, &rep, "U-power-over-N", Status::Reported);
        if let Some(v) = rep.verdict("U-power-over-N") {
            let has_value = v.detail.ends_with("true") || v.detail.ends_with("false");
            f.ensure(has_value, format!("{label}: no truth value in {:?}", v.detail));
            f.note(format!("{label}: {}", v.detail));
        }
    }
    f.done()
}

fn sylow() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    for m in [1, 2, 3] {
        let (r, mut inv) = setup(2, m, GroupKind::Sylow).map_err(e)?;
        let gens = sylow_generators(&r).map_err(e)?;
        let label = format!("m={m}");
        let rep = generation_check(&mut inv, &gens, 10).map_err(e)?;
        f.verdict(&label, &rep, "generation", Status::Pass);
        if m >= 2 {
            let want = if m == 2 { 5 } else { 10 };
            let (_, data) = minimality_report(&mut inv, &gens.minimal(), 10).map_err(e)?;
            f.ensure(data.total() == want, format!("{label}: {} minimal generators, want {want}", data.total()));
        }
    }
    f.timed("Sylow", Duration::from_secs(60), start);
    f.done()
}

fn minus_type() -> Outcome {
    let mut f = Findings::default();
    let start = Instant::now();
    let (_, mut inv) = setup(2, 1, GroupKind::Minus).map_err(e)?;
    let rep = minus_univariate_report(&mut inv, 20).map_err(e)?;
    f.verdict("m=1", &rep, "series", Status::Pass);
    f.verdict("m=1", &rep, "Q-form", Status::Pass);
    f.verdict("m=1", &rep, "jacobian", Status::Pass);
    if let Some(v) = rep.verdict("quadratic-invariant") {
        f.note(format!("degree-2 invariant: {}", v.detail));
    }
    let q = 4;
    let (_, mut inv) = setup(2, 2, GroupKind::Minus).map_err(e)?;
    let rep = minus_generator_count(&mut inv, 2 * (q + 1) + 2).map_err(e)?;
    f.verdict("m=2", &rep, "minus-generator-count", Status::Reported);
    if let Some(v) = rep.verdict("minus-generator-count") {
        f.note(v.detail.clone());
    }
    f.timed("minus type", Duration::from_secs(120), start);
    f.done()
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("group orders match brute-force enumeration", group_orders),
        ("one-copy plus-type dimensions follow 1/((1-t^2)(1-t^{q-1}))", univariate_plus),
        ("N, U, B, D invariant; off-degree B_alpha not", invariance),
        ("N, B, D generate the invariant ring", generation),
        ("minimal generator counts 7, 16, 42", minimality),
        ("Noether numbers 3, 3, 5, 7", noether_numbers),
        ("free module of rank 2(q-1) over N1, N2, B0, B_{q-1}", free_module),
        ("N, U, B generate the Hilbert ideal", hilbert_ideal),
        ("relative transfer maps into J", transfer),
        ("identities and module memberships on two copies", identities),
        ("Sylow subgroup invariants", sylow),
        ("minus type on one and two copies", minus_type),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        match &outcome {
            Ok(notes) => {
                println!("PASS  {:>2}  {title}  ({took:.2?})", i + 1);
                for n in notes {
                    println!("        {n}");
                }
            }
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}  {title}  ({took:.2?})", i + 1);
                println!("        {why}");
            }
        }
    }
    println!("\n{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
