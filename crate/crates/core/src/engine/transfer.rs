use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{multidegree_of, multidegrees, multidegrees_up_to, sub_mdeg, GradedReport, Params, Status, Verdict};
use crate::error::Result;
use crate::families::{b_alpha, compositions, d_general, l, plus_generators, Family};
use crate::field::Fe;
use crate::groups::{relative_transfer, GroupKind};
use crate::linalg::{MonomialSpace, Subspace};
use crate::poly::{Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransferBounds {
    /// Largest `|alpha|` (and `|alpha| + |beta|` for the d-family).
    pub max_alpha: usize,
    /// Largest power in the congruence `B_alpha^e = x^{e alpha} + y^{e alpha} mod J`.
    pub max_e: u32,
    /// Random elements of J pushed through the transfer.
    pub samples: usize,
    pub seed: u64,
}

impl TransferBounds {
    pub fn for_q(q: u32) -> TransferBounds {
        TransferBounds {
            max_alpha: 2 * (q as usize - 1),
            max_e: 4,
            samples: 48,
            seed: 0x5eed,
        }
    }
}

/// The ideal J of the sigma-fixed ring generated by N, B and D, built one
/// multidegree at a time.
struct IdealJ {
    ring: Ring,
    generators: Vec<(Vec<u16>, Polynomial)>,
    pieces: BTreeMap<Vec<u16>, Arc<Subspace>>,
}

/// Basis of the sigma-fixed polynomials of multidegree `mu`: each monomial
/// fixed by the swap, and `t + swap(t)` for each swapped pair.
fn sigma_fixed_basis(mu: &[u16]) -> Vec<Polynomial> {
    let space = MonomialSpace::multidegree(mu);
    let mut out = Vec::new();
    for t in space.monomials() {
        let s = t.swap_xy();
        if *t == s {
            out.push(Polynomial::from_monomial(*t));
        } else if *t < s {
            let mut p = Polynomial::from_monomial(*t);
            p.add_term(s, Fe::ONE);
            out.push(p);
        }
    }
    out
}

impl IdealJ {
    fn new(ring: &Ring) -> Result<IdealJ> {
        let s = plus_generators(ring)?.restrict(&[Family::N, Family::B, Family::D]).distinct();
        let generators = s
            .items()
            .iter()
            .map(|g| Ok((multidegree_of(&g.poly)?, g.poly.clone())))
            .collect::<Result<_>>()?;
        Ok(IdealJ {
            ring: ring.clone(),
            generators,
            pieces: BTreeMap::new(),
        })
    }

    /// Spanning products `s * h` of multidegree `mu`.
    fn spanning(&self, mu: &[u16]) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        for (nu, s) in &self.generators {
            let Some(rest) = sub_mdeg(mu, nu) else { continue };
            for h in sigma_fixed_basis(&rest) {
                out.push(self.ring.mul(s, &h)?);
            }
        }
        Ok(out)
    }

    fn piece(&mut self, mu: &[u16]) -> Result<Arc<Subspace>> {
        if let Some(p) = self.pieces.get(mu) {
            return Ok(p.clone());
        }
        let field = self.ring.field().clone();
        let mut sub = Subspace::new(field, Arc::new(MonomialSpace::multidegree(mu)));
        for p in self.spanning(mu)? {
            if sub.is_full() {
                break;
            }
            sub.insert_poly(&p)?;
        }
        let sub = Arc::new(sub);
        self.pieces.insert(mu.to_vec(), sub.clone());
        Ok(sub)
    }

    fn contains(&mut self, p: &Polynomial) -> Result<bool> {
        if p.is_zero() {
            return Ok(true);
        }
        // J is multigraded, so membership is tested component by component.
        for (mu, part) in p.multigraded_parts() {
            if !self.piece(&mu)?.contains(&part)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Tallies one family of instances.
struct Tally {
    name: &'static str,
    claim: &'static str,
    checked: usize,
    failures: Vec<Polynomial>,
    notes: Vec<String>,
}

impl Tally {
    fn new(name: &'static str, claim: &'static str) -> Tally {
        Tally {
            name,
            claim,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> Polynomial, note: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            if self.failures.len() < 8 {
                self.failures.push(witness());
            }
            if self.notes.len() < 8 {
                self.notes.push(note());
            }
        }
    }

    fn verdict(self) -> Verdict {
        let detail = if self.failures.is_empty() {
            format!("{} instances checked", self.checked)
        } else {
            format!("{} of {} instances failed: {}", self.notes.len(), self.checked, self.notes.join("; "))
        };
        Verdict::new(self.name, self.claim, Status::from_bool(self.failures.is_empty()), detail).with_witnesses(self.failures)
    }
}

fn power_of_l(ring: &Ring, alpha: &[u16]) -> Result<Polynomial> {
    let mut acc = ring.one();
    for (i, &e) in alpha.iter().enumerate() {
        if e > 0 {
            acc = ring.mul(&acc, &ring.pow(&l(ring, i)?, e as u32)?)?;
        }
    }
    Ok(acc)
}

/// `sum_{a in F_q^x} a^e`, which is 1 when `q - 1` divides `e` and 0 otherwise.
fn unit_power_sum_is_one(q: u32, e: i64) -> bool {
    e.rem_euclid(q as i64 - 1) == 0
}

/// Nonempty index sets of `0..m` as sorted lists.
fn subsets(m: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << m)).map(|mask| (0..m).filter(|i| mask >> i & 1 == 1).collect()).collect()
}

/// Positive exponent vectors of length `k` with sum at most `max`.
fn positive_exponents(k: usize, max: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    for t in k..=max {
        for c in compositions(k, t - k) {
            out.push(c.iter().map(|e| e + 1).collect());
        }
    }
    out
}

/// Checks that the relative transfer maps B_alpha, L^alpha, L^alpha B_beta
/// and d_{I,J}(alpha, beta) into J, that B_alpha^e is congruent to
/// x^{e alpha} + y^{e alpha} modulo J, and that the transfer preserves J on
/// random elements.
pub fn transfer_membership_suite(ring: &Ring, bounds: TransferBounds) -> Result<GradedReport> {
    let m = ring.m();
    let q = ring.field().q();
    let field = ring.field().clone();
    let mut j = IdealJ::new(ring)?;
    let cutoff = bounds.max_alpha;
    let mut report = GradedReport::new(Params {
        q,
        m,
        group: GroupKind::Sylow,
        cutoff,
    });
    for d in 0..=cutoff {
        let (mut dim_fixed, mut dim_j) = (0, 0);
        for mu in multidegrees(m, d) {
            dim_fixed += sigma_fixed_basis(&mu).len();
            if d > 0 {
                dim_j += j.piece(&mu)?.rank();
            }
        }
        let rec = report.record(d);
        rec.dim_invariants = Some(dim_fixed);
        rec.dim_ideal_generators = Some(dim_j);
    }

    let alphas = multidegrees_up_to(m, bounds.max_alpha);

    let mut t_b = Tally::new(
        "transfer-of-B",
        "R(B_alpha) equals B_alpha when q-1 divides |alpha| and 0 otherwise, and lies in J",
    );
    for alpha in &alphas {
        let b = b_alpha(ring, alpha)?;
        let r = relative_transfer(ring, &b)?;
        let k = super::total(alpha) as i64;
        let expected = if unit_power_sum_is_one(q, k) { b.clone() } else { ring.zero() };
        let ok = r == expected && j.contains(&r)?;
        t_b.check(ok, || r.clone(), || format!("alpha = {alpha:?}"));
    }

    let mut t_l = Tally::new("transfer-of-L-power", "R(L^alpha) lies in J");
    for alpha in &alphas {
        let r = relative_transfer(ring, &power_of_l(ring, alpha)?)?;
        let ok = j.contains(&r)?;
        t_l.check(ok, || r.clone(), || format!("alpha = {alpha:?}"));
    }

    let mut t_lb = Tally::new("transfer-of-L-power-times-B", "R(L^alpha B_beta) lies in J for every nonzero 0/1 vector beta");
    let betas: Vec<Vec<u16>> = (1u32..(1 << m)).map(|mask| (0..m).map(|i| (mask >> i & 1) as u16).collect()).collect();
    for alpha in &alphas {
        let la = power_of_l(ring, alpha)?;
        for beta in &betas {
            let r = relative_transfer(ring, &ring.mul(&la, &b_alpha(ring, beta)?)?)?;
            let ok = j.contains(&r)?;
            t_lb.check(ok, || r.clone(), || format!("alpha = {alpha:?}, beta = {beta:?}"));
        }
    }

    let mut t_d = Tally::new(
        "transfer-of-d",
        "R(d_{I,J}(alpha, beta)) equals (sum_a a^{|beta|-|alpha|}) d_{I,J}(alpha, beta) and lies in J",
    );
    let sets = subsets(m);
    for i_set in &sets {
        for j_set in &sets {
            if i_set.len() + j_set.len() > bounds.max_alpha {
                continue;
            }
            for a in positive_exponents(i_set.len(), bounds.max_alpha - j_set.len()) {
                let used: usize = a.iter().map(|&e| e as usize).sum();
                for b in positive_exponents(j_set.len(), bounds.max_alpha - used) {
                    let d = d_general(ring, i_set, j_set, &a, &b)?;
                    let r = relative_transfer(ring, &d)?;
                    let diff = b.iter().map(|&e| e as i64).sum::<i64>() - used as i64;
                    let expected = if unit_power_sum_is_one(q, diff) { d.clone() } else { ring.zero() };
                    let ok = r == expected && j.contains(&r)?;
                    t_d.check(ok, || d.clone(), || format!("I = {i_set:?}, J = {j_set:?}, alpha = {a:?}, beta = {b:?}"));
                }
            }
        }
    }

    let mut t_pow = Tally::new(
        "power-congruence",
        "B_alpha^e + x^{e alpha} + y^{e alpha} lies in J; in particular L_i^e is congruent to x_i^e + y_i^e",
    );
    for alpha in &alphas {
        let b = b_alpha(ring, alpha)?;
        for e in 1..=bounds.max_e {
            let scaled: Vec<u16> = alpha.iter().map(|&a| a * e as u16).collect();
            let mut f = ring.pow(&b, e)?;
            f.add_assign(&b_alpha(ring, &scaled)?);
            let ok = j.contains(&f)?;
            t_pow.check(ok, || f.clone(), || format!("alpha = {alpha:?}, e = {e}"));
        }
    }

    let mut t_j = Tally::new("transfer-preserves-J", "R maps J into J (random elements of J)");
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let elements: Vec<Fe> = field.elements().collect();
    for _ in 0..bounds.samples {
        let mu = &alphas[rng.next_u32() as usize % alphas.len()];
        let mut f = ring.zero();
        for p in j.spanning(mu)? {
            let c = elements[rng.next_u32() as usize % elements.len()];
            f.add_assign(&ring.scale(&p, c)?);
        }
        let r = relative_transfer(ring, &f)?;
        let ok = j.contains(&r)?;
        t_j.check(ok, || f.clone(), || format!("random element of multidegree {mu:?}"));
    }

    for t in [t_b, t_l, t_lb, t_d, t_pow, t_j] {
        report.verdicts.push(t.verdict());
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use alloc::vec;

    #[test]
    fn sigma_fixed_dimension() {
        // (x1, y1) of degree 2: x^2 + y^2, xy
        assert_eq!(sigma_fixed_basis(&[2]).len(), 2);
        assert_eq!(sigma_fixed_basis(&[1, 1]).len(), 2);
    }

    #[test]
    fn small_examples() {
        let f = Arc::new(FieldContext::new(2).unwrap());
        let ring = Ring::new(f, 2).unwrap();
        let mut j = IdealJ::new(&ring).unwrap();
        let b21 = b_alpha(&ring, &[2, 1]).unwrap();
        assert_eq!(relative_transfer(&ring, &b21).unwrap(), b21);
        assert!(j.contains(&b21).unwrap());
        let rl = relative_transfer(&ring, &power_of_l(&ring, &[1, 1]).unwrap()).unwrap();
        assert!(j.contains(&rl).unwrap());
        let li = l(&ring, 0).unwrap();
        let mut c = ring.pow(&li, 2).unwrap();
        c.add_assign(&ring.pow(&ring.x(0), 2).unwrap());
        c.add_assign(&ring.pow(&ring.y(0), 2).unwrap());
        assert!(c.is_zero());
        // x1 + y1 is sigma-fixed but outside J (J has no degree-one part)
        assert!(!j.contains(&li).unwrap());
    }

    #[test]
    fn positive_exponent_lists() {
        assert_eq!(positive_exponents(2, 3), [vec![1, 1], vec![1, 2], vec![2, 1]]);
        assert!(positive_exponents(3, 2).is_empty());
    }
}
