use alloc::format;
use alloc::vec;

use super::generation::generation_check;
use super::minimality::minimality_data;
use super::{GradedReport, InvariantRing, Status, Verdict};
use crate::error::{usage, Result};
use crate::families::{e_poly, q_poly, quadratic_coefficients, Family, GeneratorSet};
use crate::field::Fe;
use crate::groups::{is_invariant, GroupKind};
use crate::poly::{Polynomial, Ring};
use crate::series::two_generator_series;

fn series_check(inv: &mut InvariantRing, report: &mut GradedReport, a: usize, b: usize, cutoff: usize) -> Verdict {
    let series = two_generator_series(a, b, cutoff);
    let mut bad = vec![];
    for d in 0..=cutoff {
        let dim = inv.dim(d);
        let rec = report.record(d);
        rec.dim_invariants = Some(dim);
        rec.series_coefficient = Some(series[d]);
        if series[d] != dim as i64 {
            bad.push(d);
        }
    }
    Verdict::new(
        "series",
        if a == 2 && b == inv.q() as usize - 1 {
            "the invariants of one copy have Hilbert series 1/((1-t^2)(1-t^{q-1}))"
        } else {
            "the invariants of one copy have Hilbert series 1/((1-t^2)(1-t^{q+1}))"
        },
        Status::from_bool(bad.is_empty()),
        if bad.is_empty() {
            format!("dimensions agree in degrees 0..={cutoff}")
        } else {
            format!("dimensions differ in degrees {bad:?}")
        },
    )
}

/// O2+ on one copy: dimensions against `1/((1-t^2)(1-t^{q-1}))`.
pub fn plus_univariate_report(inv: &mut InvariantRing, cutoff: usize) -> Result<GradedReport> {
    if inv.m() != 1 || inv.kind() != GroupKind::Plus {
        return Err(usage("needs the plus-type group on one copy"));
    }
    let mut report = GradedReport::new(inv.params(cutoff));
    let q = inv.q() as usize;
    let v = series_check(inv, &mut report, 2, q - 1, cutoff);
    report.verdicts.push(v);
    Ok(report)
}

/// `det d(f, g)/d(x, y)` for one copy.
pub fn jacobian(ring: &Ring, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let fx = ring.derivative(f, 0)?;
    let fy = ring.derivative(f, 1)?;
    let gx = ring.derivative(g, 0)?;
    let gy = ring.derivative(g, 1)?;
    let mut det = ring.mul(&fx, &gy)?;
    det.add_assign(&ring.mul(&fy, &gx)?);
    Ok(det)
}

/// O2- on one copy: dimensions against `1/((1-t^2)(1-t^{q+1}))`, the
/// invariants `E = x y^q + x^q y` and `Q = sum_g g.x^2`, and the Jacobian
/// identity `det d(E, Q)/d(x, y) = u E` with `u` the `xy`-coefficient of `Q`.
///
/// The degree-2 invariant spanning the fixed space is also reported with
/// its own Jacobian against `E`.
pub fn minus_univariate_report(inv: &mut InvariantRing, cutoff: usize) -> Result<GradedReport> {
    if inv.m() != 1 || inv.kind() != GroupKind::Minus {
        return Err(usage("needs the minus-type group on one copy"));
    }
    let ring = inv.ring().clone();
    let q = inv.q() as usize;
    let mut report = GradedReport::new(inv.params(cutoff));
    let v = series_check(inv, &mut report, 2, q + 1, cutoff);
    report.verdicts.push(v);

    let e = e_poly(&ring)?;
    let e_inv = is_invariant(&ring, inv.table(), &e)?;
    report.verdicts.push(
        Verdict::new(
            "E-invariant",
            "E = x y^q + x^q y is invariant",
            Status::from_bool(e_inv),
            format!("E = {e}"),
        )
        .with_witnesses(vec![e.clone()]),
    );

    let qp = q_poly(&ring, inv.table())?;
    let c = quadratic_coefficients(&ring, &qp)?;
    let q_ok = c.x2 == Fe::ONE && !c.u.is_zero();
    report.verdicts.push(
        Verdict::new(
            "Q-form",
            "Q = sum over the group of g.x^2 has the form x^2 + u xy + v y^2 with u != 0",
            Status::from_bool(q_ok),
            format!("Q = {qp}; coefficients of x^2, xy, y^2: {}, {}, {}", c.x2, c.u, c.v),
        )
        .with_witnesses(vec![qp.clone()]),
    );

    let det = jacobian(&ring, &e, &qp)?;
    let ue = ring.scale(&e, c.u)?;
    let jac_ok = det == ue && !det.is_zero();
    report.verdicts.push(
        Verdict::new(
            "jacobian",
            "the Jacobian determinant of (E, Q) equals u E and is nonzero",
            Status::from_bool(jac_ok),
            format!("det = {det}; u E = {ue}"),
        )
        .with_witnesses(vec![det]),
    );

    // The actual quadratic invariant, normalized by the echelon form.
    let quad = inv.basis(&[2]);
    if let Some(p) = quad.first().filter(|_| quad.len() == 1) {
        let pc = quadratic_coefficients(&ring, p)?;
        let det = jacobian(&ring, &e, p)?;
        let holds = det == ring.scale(&e, pc.u)? && !det.is_zero();
        report.verdicts.push(
            Verdict::new(
                "quadratic-invariant",
                "the degree-2 invariant P = a x^2 + u xy + v y^2 satisfies det d(E, P)/d(x, y) = u E != 0",
                Status::Reported,
                format!(
                    "P = {p}; coefficients of x^2, xy, y^2: {}, {}, {}; Jacobian identity holds: {holds}",
                    pc.x2, pc.u, pc.v
                ),
            )
            .with_witnesses(vec![p.clone(), det]),
        );
        let mut pair = GeneratorSet::new(ring.clone(), GroupKind::Minus);
        pair.push("E", Family::E, e.clone())?;
        pair.push("P", Family::Q, p.clone())?;
        let gen = generation_check(inv, &pair, cutoff)?;
        let ok = gen.passed();
        report.verdicts.push(Verdict::new(
            "polynomial-algebra",
            "the invariants of one copy are generated by E and the degree-2 invariant",
            Status::Reported,
            format!("generation by E and P up to degree {cutoff}: {ok}"),
        ));
    }
    Ok(report)
}

/// O2- on two copies: the number of minimal generators up to the cutoff,
/// reported next to q + 5.
pub fn minus_generator_count(inv: &mut InvariantRing, cutoff: usize) -> Result<GradedReport> {
    if inv.m() != 2 || inv.kind() != GroupKind::Minus {
        return Err(usage("needs the minus-type group on two copies"));
    }
    let q = inv.q() as usize;
    let data = minimality_data(inv, cutoff)?;
    let mut report = GradedReport::new(inv.params(cutoff));
    let counts = data.counts_by_degree(cutoff);
    for d in 0..=cutoff {
        let dim = inv.dim(d);
        let rec = report.record(d);
        rec.dim_invariants = Some(dim);
        rec.minimal_generators = Some(counts[d]);
        rec.dim_decomposables = Some(if d == 0 { 0 } else { dim - counts[d] });
    }
    let total = data.total();
    report.verdicts.push(Verdict::new(
        "minus-generator-count",
        "the invariants of O2- on two copies need q+5 generators",
        Status::Reported,
        format!(
            "{total} minimal generators in degrees 1..={cutoff} (q+5 = {}); per degree: {:?}",
            q + 5,
            &counts[1..]
        ),
    ));
    Ok(report)
}
