use alloc::format;
use alloc::vec::Vec;

use super::{multidegree_of, multidegrees, shifted_row, sub_mdeg, sub_multidegrees, total, GradedReport, InvariantRing, Status, Verdict};
use crate::error::{usage, Result};
use crate::families::{plus_generators, Family};
use crate::groups::GroupKind;
use crate::linalg::{MonomialSpace, Subspace};
use crate::poly::Polynomial;

/// Compares, degree by degree in the full polynomial ring, the ideal
/// generated by N, U and B with the ideal generated by all invariants of
/// positive degree.
pub fn hilbert_ideal_check(inv: &mut InvariantRing, cutoff: usize) -> Result<GradedReport> {
    if inv.kind() != GroupKind::Plus {
        return Err(usage("the Hilbert-ideal check is for the plus-type group"));
    }
    let ring = inv.ring().clone();
    let field = inv.field().clone();
    let q = inv.q() as usize;
    let gens = plus_generators(&ring)?.restrict(&[Family::N, Family::U, Family::B]).distinct();
    let graded: Vec<(Vec<u16>, &Polynomial)> = gens
        .items()
        .iter()
        .map(|g| Ok((multidegree_of(&g.poly)?, &g.poly)))
        .collect::<Result<_>>()?;

    let mut report = GradedReport::new(inv.params(cutoff));
    report.record(0).dim_ideal_generators = Some(0);
    report.record(0).dim_ideal_invariants = Some(0);
    let mut bad = Vec::new();
    let mut witnesses = Vec::new();
    for d in 1..=cutoff {
        let (mut dim_gen, mut dim_inv) = (0, 0);
        for mu in multidegrees(inv.m(), d) {
            let space = inv.space(&mu);
            let mut from_gens = Subspace::new(field.clone(), space.clone());
            'g: for (nu, f) in &graded {
                let Some(rest) = sub_mdeg(&mu, nu) else { continue };
                for mono in MonomialSpace::multidegree(&rest).monomials() {
                    if from_gens.is_full() {
                        break 'g;
                    }
                    from_gens.insert(shifted_row(&field, &space, mono, f)?);
                }
            }
            let mut from_invs = Subspace::new(field.clone(), space.clone());
            'h: for nu in sub_multidegrees(&mu) {
                if total(&nu) == 0 {
                    continue;
                }
                let rest = sub_mdeg(&mu, &nu).expect("nu <= mu");
                let cofactors = MonomialSpace::multidegree(&rest);
                for h in inv.basis(&nu).iter() {
                    for mono in cofactors.monomials() {
                        if from_invs.is_full() {
                            break 'h;
                        }
                        from_invs.insert(shifted_row(&field, &space, mono, h)?);
                    }
                }
            }
            dim_gen += from_gens.rank();
            dim_inv += from_invs.rank();
            if !from_gens.same_as(&from_invs) {
                if !bad.contains(&d) {
                    bad.push(d);
                }
                if witnesses.len() < 8 {
                    if let Some(w) = from_invs.basis().into_iter().find(|p| !from_gens.contains(p).unwrap_or(false)) {
                        witnesses.push(w);
                    }
                }
            }
        }
        let rec = report.record(d);
        rec.dim_ideal_generators = Some(dim_gen);
        rec.dim_ideal_invariants = Some(dim_inv);
    }
    report.verdicts.push(
        Verdict::new(
            "ideal-equality",
            "N, U and B generate the Hilbert ideal: both ideals agree in every degree up to the cutoff",
            Status::from_bool(bad.is_empty()),
            if bad.is_empty() {
                format!("graded pieces agree in degrees 0..={cutoff}")
            } else {
                format!("graded pieces differ in degrees {bad:?}")
            },
        )
        .with_witnesses(witnesses),
    );
    let max_deg = gens.max_degree();
    let mut degs: Vec<usize> = gens.items().iter().map(|g| g.degree).collect();
    degs.sort();
    report.verdicts.push(Verdict::new(
        "degree-bound",
        "the Hilbert ideal is generated by invariants of degree at most q-1",
        Status::from_bool(max_deg == q - 1),
        format!("generator degrees {degs:?}; q-1 = {}", q - 1),
    ));
    Ok(report)
}
