use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::{multidegree_of, multidegrees, sub_mdeg, GradedReport, InvariantRing, Status, Verdict};
use crate::error::{usage, Result};
use crate::families::{b_k, n, u};
use crate::field::FieldContext;
use crate::groups::GroupKind;
use crate::linalg::{MonomialSpace, Subspace};
use crate::poly::{Polynomial, Ring};
use crate::series::rational_series;

/// The module basis candidates `M` for m = 2:
/// `U^i` for `i <= q/2`, `B_k` for `1 <= k <= q-2`, and `B_i B_j` with
/// `i + j = q - 1`, `1 <= i < j`.
pub fn free_module_basis(ring: &Ring) -> Result<Vec<(String, Polynomial)>> {
    if ring.m() != 2 {
        return Err(usage("the free-module basis is defined for m = 2"));
    }
    let q = ring.field().q() as usize;
    let u12 = u(ring, 0, 1)?;
    let mut out = Vec::new();
    for i in 0..=q / 2 {
        out.push((format!("U(1,2)^{i}"), ring.pow(&u12, i as u32)?));
    }
    for k in 1..=q - 2 {
        out.push((format!("B{k}"), b_k(ring, k)?));
    }
    for i in 1..=q - 2 {
        let j = q - 1 - i;
        if i < j {
            out.push((format!("B{i}*B{j}"), ring.mul(&b_k(ring, i)?, &b_k(ring, j)?)?));
        }
    }
    Ok(out)
}

/// `U^i` for `i <= q - 1` together with `B_k` for `1 <= k <= q-2`; the same
/// degrees as [`free_module_basis`] when q = 4.
pub fn u_power_basis(ring: &Ring) -> Result<Vec<(String, Polynomial)>> {
    if ring.m() != 2 {
        return Err(usage("the free-module basis is defined for m = 2"));
    }
    let q = ring.field().q() as usize;
    let u12 = u(ring, 0, 1)?;
    let mut out = Vec::new();
    for i in 0..q {
        out.push((format!("U(1,2)^{i}"), ring.pow(&u12, i as u32)?));
    }
    for k in 1..=q - 2 {
        out.push((format!("B{k}"), b_k(ring, k)?));
    }
    Ok(out)
}

/// All products `prod g_i^{k_i}` of the given multihomogeneous polynomials
/// with multidegree exactly `target`.
pub fn monomials_in(ring: &Ring, gens: &[(Polynomial, Vec<u16>)], target: &[u16]) -> Result<Vec<Polynomial>> {
    fn rec(ring: &Ring, gens: &[(Polynomial, Vec<u16>)], rest: Vec<u16>, acc: Polynomial, out: &mut Vec<Polynomial>) -> Result<()> {
        if rest.iter().all(|&e| e == 0) {
            out.push(acc);
            return Ok(());
        }
        let Some(((g, mdeg), tail)) = gens.split_first() else {
            return Ok(());
        };
        let mut rest = rest;
        let mut acc = acc;
        loop {
            rec(ring, tail, rest.clone(), acc.clone(), out)?;
            match sub_mdeg(&rest, mdeg) {
                Some(r) => {
                    rest = r;
                    acc = ring.mul(&acc, g)?;
                }
                None => return Ok(()),
            }
        }
    }
    let mut out = Vec::new();
    rec(ring, gens, target.to_vec(), ring.one(), &mut out)?;
    Ok(out)
}

/// The graded pieces of `sum_f A * f` for a polynomial algebra `A` given by
/// its generators and a list of module generators `f`.
#[derive(Clone, Debug)]
pub struct ModuleSpan {
    ring: Ring,
    algebra: Vec<(Polynomial, Vec<u16>)>,
    module: Vec<(String, Polynomial, Vec<u16>)>,
}

impl ModuleSpan {
    pub fn new(ring: &Ring, algebra: &[Polynomial], module: &[(String, Polynomial)]) -> Result<ModuleSpan> {
        let algebra = algebra
            .iter()
            .map(|p| Ok((p.clone(), multidegree_of(p)?)))
            .collect::<Result<Vec<_>>>()?;
        let module = module
            .iter()
            .map(|(l, p)| Ok((l.clone(), p.clone(), multidegree_of(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ModuleSpan {
            ring: ring.clone(),
            algebra,
            module,
        })
    }

    /// `R = F_q[N1, N2, B_0, B_{q-1}]` acting on `M`.
    pub fn candidate(ring: &Ring) -> Result<ModuleSpan> {
        let q = ring.field().q() as usize;
        let r = [n(ring, 0)?, n(ring, 1)?, b_k(ring, 0)?, b_k(ring, q - 1)?];
        ModuleSpan::new(ring, &r, &free_module_basis(ring)?)
    }

    pub fn module(&self) -> impl Iterator<Item = (&str, &Polynomial)> {
        self.module.iter().map(|(l, p, _)| (l.as_str(), p))
    }

    /// The span in multidegree `mu` and the number of products `r * f`
    /// spanning it.
    pub fn span(&self, field: &alloc::sync::Arc<FieldContext>, mu: &[u16]) -> Result<(Subspace, usize)> {
        let space = alloc::sync::Arc::new(MonomialSpace::multidegree(mu));
        let mut s = Subspace::new(field.clone(), space);
        let mut count = 0;
        for (_, f, mdeg) in &self.module {
            let Some(rest) = sub_mdeg(mu, mdeg) else { continue };
            for r in monomials_in(&self.ring, &self.algebra, &rest)? {
                count += 1;
                s.insert_poly(&self.ring.mul(&r, f)?)?;
            }
        }
        Ok((s, count))
    }

    /// Whether the multihomogeneous `p` lies in the module.
    pub fn contains(&self, field: &alloc::sync::Arc<FieldContext>, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        let mu = multidegree_of(p)?;
        self.span(field, &mu)?.0.contains(p)
    }
}

/// Checks that `M` is a basis of the invariants of O2+ on two copies as a
/// free module over `F_q[N1, N2, B_0, B_{q-1}]`, degree by degree.
pub fn free_module_check(inv: &mut InvariantRing, cutoff: usize) -> Result<GradedReport> {
    if inv.m() != 2 || inv.kind() != GroupKind::Plus {
        return Err(usage("the free-module check needs the plus-type group on m = 2 copies"));
    }
    let ring = inv.ring().clone();
    let field = inv.field().clone();
    let q = inv.q() as usize;
    let ms = ModuleSpan::candidate(&ring)?;
    let mut report = GradedReport::new(inv.params(cutoff));

    let degs: Vec<usize> = ms.module().map(|(_, p)| p.homogeneous_degree().unwrap_or(0)).collect();
    let size = degs.len();
    let mut sorted = degs.clone();
    sorted.sort();
    report.verdicts.push(Verdict::new(
        "basis-size",
        "the candidate module basis has 2(q-1) elements",
        Status::from_bool(size == 2 * (q - 1)),
        format!("{size} elements of degrees {sorted:?}; 2(q-1) = {}", 2 * (q - 1)),
    ));

    let series = rational_series(&degs, &[2, 2, q - 1, q - 1], cutoff);
    let (mut span_bad, mut series_bad, mut free_bad) = (Vec::new(), Vec::new(), Vec::new());
    let mut witnesses = Vec::new();
    for d in 0..=cutoff {
        let (mut dim_inv, mut dim_span, mut count) = (0, 0, 0);
        for mu in multidegrees(2, d) {
            let piece = inv.piece(&mu);
            let (s, c) = ms.span(&field, &mu)?;
            let inv_rank = piece.rank();
            let same = s.same_as(&piece);
            if !same && witnesses.len() < 8 {
                if let Some(w) = piece.basis().into_iter().find(|h| !s.contains(h).unwrap_or(false)) {
                    witnesses.push(w);
                }
            }
            dim_inv += inv_rank;
            dim_span += s.rank();
            count += c;
            if !same && !span_bad.contains(&d) {
                span_bad.push(d);
            }
        }
        if series[d] != dim_inv as i64 {
            series_bad.push(d);
        }
        if count != dim_inv {
            free_bad.push(d);
        }
        let rec = report.record(d);
        rec.dim_invariants = Some(dim_inv);
        rec.dim_span = Some(dim_span);
        rec.product_count = Some(count);
        rec.series_coefficient = Some(series[d]);
    }
    report.verdicts.push(
        Verdict::new(
            "spanning",
            "products r*f with r in F_q[N1, N2, B_0, B_{q-1}] and f in the candidate basis span every graded piece of the invariant ring",
            Status::from_bool(span_bad.is_empty()),
            if span_bad.is_empty() {
                format!("spans agree in degrees 0..={cutoff}")
            } else {
                format!("span falls short in degrees {span_bad:?}")
            },
        )
        .with_witnesses(witnesses),
    );
    report.verdicts.push(Verdict::new(
        "series",
        "invariant dimensions match the series (sum t^deg f) / ((1-t^2)^2 (1-t^{q-1})^2)",
        Status::from_bool(series_bad.is_empty()),
        if series_bad.is_empty() {
            format!("coefficients agree in degrees 0..={cutoff}")
        } else {
            format!("coefficients differ in degrees {series_bad:?}")
        },
    ));
    report.verdicts.push(Verdict::new(
        "freeness",
        "in every degree the number of products r*f equals the invariant dimension, so the spanning products are independent",
        Status::from_bool(free_bad.is_empty()),
        if free_bad.is_empty() {
            format!("counts agree in degrees 0..={cutoff}")
        } else {
            format!("counts differ in degrees {free_bad:?}")
        },
    ));

    // The U-power basis, reported next to the candidate basis.
    let r = [n(&ring, 0)?, n(&ring, 1)?, b_k(&ring, 0)?, b_k(&ring, q - 1)?];
    let alt = ModuleSpan::new(&ring, &r, &u_power_basis(&ring)?)?;
    let mut alt_bad = Vec::new();
    for d in 0..=cutoff {
        let mut count = 0;
        let mut same = true;
        for mu in multidegrees(2, d) {
            let (s, c) = alt.span(&field, &mu)?;
            count += c;
            same &= s.same_as(&inv.piece(&mu));
        }
        if !same || count != report.degrees[d].dim_invariants.unwrap_or(0) {
            alt_bad.push(d);
        }
    }
    report.verdicts.push(Verdict::new(
        "U-power-basis",
        "U(1,2)^i for i <= q-1 together with B_k for 1 <= k <= q-2 form a free basis over the same parameters",
        Status::Reported,
        if alt_bad.is_empty() {
            format!("free basis in degrees 0..={cutoff}: true")
        } else {
            format!("free basis in degrees 0..={cutoff}: false, first failures in degrees {alt_bad:?}")
        },
    ));

    if q == 4 {
        let u12 = u(&ring, 0, 1)?;
        let lhs = ring.pow(&u12, 3)?;
        let mut rhs = ring.mul(&b_k(&ring, 0)?, &b_k(&ring, 3)?)?;
        rhs.add_assign(&ring.mul(&b_k(&ring, 1)?, &b_k(&ring, 2)?)?);
        report.verdicts.push(
            Verdict::new(
                "cube-identity",
                "U(1,2)^3 = B0*B3 + B1*B2 over F_4",
                Status::from_bool(lhs == rhs),
                format!("U(1,2)^3 = {lhs}; B0*B3 + B1*B2 = {rhs}"),
            )
            .with_witnesses(vec![lhs, rhs]),
        );
    }
    Ok(report)
}
