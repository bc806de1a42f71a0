//! The two-dimensional orthogonal groups over GF(q), q even, and their
//! diagonal action on m copies of the natural representation.
//!
//! A group element `g` acts on polynomials by `g.f = f o g^{-1}`: the pair
//! `(x_i, y_i)` is sent to the rows of `g^{-1}`, so that the swap `sigma`
//! exchanges `x_i` and `y_i` and `tau_a = diag(a, a^{-1})` sends `x_i` to
//! `a^{-1} x_i` and `y_i` to `a y_i`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{usage, Error, Result};
use crate::field::{Fe, FieldContext};
use crate::poly::{Monomial, Polynomial, Ring};

/// A row-major 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matrix2 {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2::new(Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE);
    pub const SIGMA: Matrix2 = Matrix2::new(Fe::ZERO, Fe::ONE, Fe::ONE, Fe::ZERO);

    pub const fn new(a: Fe, b: Fe, c: Fe, d: Fe) -> Matrix2 {
        Matrix2 { a, b, c, d }
    }

    /// `diag(a, a^{-1})`.
    pub fn tau(field: &FieldContext, a: Fe) -> Result<Matrix2> {
        Ok(Matrix2::new(a, Fe::ZERO, Fe::ZERO, field.inv(a)?))
    }

    pub fn det(&self, field: &FieldContext) -> Fe {
        field.mul(self.a, self.d) + field.mul(self.b, self.c)
    }

    pub fn mul(&self, field: &FieldContext, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: field.mul(self.a, o.a) + field.mul(self.b, o.c),
            b: field.mul(self.a, o.b) + field.mul(self.b, o.d),
            c: field.mul(self.c, o.a) + field.mul(self.d, o.c),
            d: field.mul(self.c, o.b) + field.mul(self.d, o.d),
        }
    }

    pub fn transpose(&self) -> Matrix2 {
        Matrix2::new(self.a, self.c, self.b, self.d)
    }

    pub fn inverse(&self, field: &FieldContext) -> Result<Matrix2> {
        let det = self.det(field);
        let di = field.inv(det).map_err(|_| usage(format!("singular matrix {self}")))?;
        // In characteristic 2 the adjugate has no sign changes.
        Ok(Matrix2 {
            a: field.mul(self.d, di),
            b: field.mul(self.b, di),
            c: field.mul(self.c, di),
            d: field.mul(self.a, di),
        })
    }

    /// Diagonal or antidiagonal: maps monomials to scaled monomials.
    pub fn is_monomial(&self) -> bool {
        (self.b.is_zero() && self.c.is_zero()) || (self.a.is_zero() && self.d.is_zero())
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    /// O2+(F_q), the stabilizer of the hyperbolic form.
    Plus,
    /// O2-(F_q), the stabilizer of the elliptic form built from `w`.
    Minus,
    /// The Sylow 2-subgroup `{1, sigma}` of O2+.
    Sylow,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Plus => "plus",
            GroupKind::Minus => "minus",
            GroupKind::Sylow => "sylow",
        }
    }

    /// Expected order for `q` elements in the field.
    pub fn order(self, q: u32) -> usize {
        match self {
            GroupKind::Plus => 2 * (q as usize - 1),
            GroupKind::Minus => 2 * (q as usize + 1),
            GroupKind::Sylow => 2,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The Gram matrix whose congruence class defines the group:
/// `[[0, 1], [0, 0]]` for plus and `[[w, 1], [0, w]]` for minus.
pub fn gram_matrix(field: &FieldContext, kind: GroupKind) -> Result<Matrix2> {
    match kind {
        GroupKind::Plus => Ok(Matrix2::new(Fe::ZERO, Fe::ONE, Fe::ZERO, Fe::ZERO)),
        GroupKind::Minus => Ok(Matrix2::new(field.w(), Fe::ONE, Fe::ZERO, field.w())),
        GroupKind::Sylow => Err(usage("the Sylow subgroup has no defining form of its own")),
    }
}

/// Whether `T O T^t - O` is alternate (symmetric with zero diagonal).
pub fn is_orthogonal(field: &FieldContext, t: &Matrix2, kind: GroupKind) -> Result<bool> {
    if t.det(field).is_zero() {
        return Err(usage(format!("singular matrix {t}")));
    }
    let o = gram_matrix(field, kind)?;
    let diff = t.mul(field, &o).mul(field, &t.transpose());
    let (a, b, c, d) = (diff.a + o.a, diff.b + o.b, diff.c + o.c, diff.d + o.d);
    Ok(a.is_zero() && d.is_zero() && b == c)
}

/// An enumerated group with the generators used for invariance tests.
#[derive(Clone, Debug)]
pub struct GroupTable {
    kind: GroupKind,
    field: Arc<FieldContext>,
    elements: Vec<Matrix2>,
    generators: Vec<Matrix2>,
    notes: Vec<String>,
}

impl GroupTable {
    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        &self.field
    }

    /// All elements, sorted by their entries.
    pub fn elements(&self) -> &[Matrix2] {
        &self.elements
    }

    pub fn generators(&self) -> &[Matrix2] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Observations made during construction, e.g. unexpected family sizes.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn contains(&self, g: &Matrix2) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// Closure of `gens` under multiplication.
pub fn closure(field: &FieldContext, gens: &[Matrix2]) -> Vec<Matrix2> {
    let mut seen: BTreeSet<Matrix2> = BTreeSet::new();
    seen.insert(Matrix2::IDENTITY);
    let mut frontier = vec![Matrix2::IDENTITY];
    while let Some(h) = frontier.pop() {
        for g in gens {
            let p = h.mul(field, g);
            if seen.insert(p) {
                frontier.push(p);
            }
        }
    }
    seen.into_iter().collect()
}

/// Every invertible `T` with `is_orthogonal(T, kind)`.
///
/// The diagonal of `T O T^t` is the quadratic form of `O` on the rows of `T`,
/// so rows are filtered by that first and only pairs of surviving rows are
/// tested in full.
pub fn brute_force_group(field: &FieldContext, kind: GroupKind) -> Result<Vec<Matrix2>> {
    let o = gram_matrix(field, kind)?;
    let form = |u: Fe, v: Fe| {
        field.mul(o.a, field.square(u)) + field.mul(o.b + o.c, field.mul(u, v)) + field.mul(o.d, field.square(v))
    };
    let rows = |target: Fe| -> Vec<(Fe, Fe)> {
        let mut out = Vec::new();
        for u in field.elements() {
            for v in field.elements() {
                if form(u, v) == target {
                    out.push((u, v));
                }
            }
        }
        out
    };
    let top = rows(o.a);
    let bottom = rows(o.d);
    let mut found = Vec::new();
    for &(a, b) in &top {
        for &(c, d) in &bottom {
            let t = Matrix2::new(a, b, c, d);
            if !t.det(field).is_zero() && is_orthogonal(field, &t, kind)? {
                found.push(t);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// The minus-type family: `tau_0 = [[0, 1], [1, w^{-1}]]` together with every
/// `[[a, b], [b, a + b w^{-1}]]` for `a != 0` and `b` solving
/// `a^2 w + b^2 w + w + ab = 0`, found by exhaustive search.
pub fn minus_tau_family(field: &FieldContext) -> Result<Vec<Matrix2>> {
    let w = field.w();
    let wi = field.inv(w)?;
    let mut fam = vec![Matrix2::new(Fe::ZERO, Fe::ONE, Fe::ONE, wi)];
    for a in field.units() {
        for b in field.elements() {
            let lhs = field.mul(field.square(a), w) + field.mul(field.square(b), w) + w + field.mul(a, b);
            if lhs.is_zero() {
                fam.push(Matrix2::new(a, b, b, a + field.mul(b, wi)));
            }
        }
    }
    fam.sort();
    fam.dedup();
    Ok(fam)
}

/// Builds the group and checks it against [`brute_force_group`].
pub fn build_group(field: &Arc<FieldContext>, kind: GroupKind) -> Result<GroupTable> {
    let f = field.as_ref();
    let mut notes = Vec::new();
    let (elements, generators, reference) = match kind {
        GroupKind::Plus => {
            let gens = vec![Matrix2::SIGMA, Matrix2::tau(f, f.primitive())?];
            (closure(f, &gens), gens, brute_force_group(f, kind)?)
        }
        GroupKind::Minus => {
            let taus = minus_tau_family(f)?;
            let eps: Vec<Matrix2> = taus.iter().map(|t| Matrix2::SIGMA.mul(f, t)).collect();
            let q = f.q() as usize;
            let tau_count = taus.iter().filter(|t| **t != Matrix2::IDENTITY).count();
            let eps_count = eps.iter().filter(|t| **t != Matrix2::SIGMA).count();
            if tau_count != q {
                notes.push(format!("tau family has {tau_count} non-identity elements, expected {q}"));
            }
            if eps_count != q {
                notes.push(format!("sigma*tau family has {eps_count} elements besides sigma, expected {q}"));
            }
            let mut all: Vec<Matrix2> = vec![Matrix2::IDENTITY, Matrix2::SIGMA];
            all.extend(taus);
            all.extend(eps);
            all.sort();
            all.dedup();
            let gens = all.clone();
            (all, gens, brute_force_group(f, kind)?)
        }
        GroupKind::Sylow => {
            let gens = vec![Matrix2::SIGMA];
            let mut reference = vec![Matrix2::IDENTITY, Matrix2::SIGMA];
            reference.sort();
            (closure(f, &gens), gens, reference)
        }
    };
    if elements != reference {
        return Err(Error::GroupMismatch {
            enumerated: elements,
            brute_force: reference,
        });
    }
    if kind == GroupKind::Sylow {
        for g in &elements {
            if !is_orthogonal(f, g, GroupKind::Plus)? {
                return Err(Error::GroupMismatch {
                    enumerated: elements.clone(),
                    brute_force: brute_force_group(f, GroupKind::Plus)?,
                });
            }
        }
    }
    Ok(GroupTable {
        kind,
        field: field.clone(),
        elements,
        generators,
        notes,
    })
}

/// A precomputed action of one group element on polynomials.
#[derive(Clone, Debug)]
pub struct Action {
    /// `g^{-1}`: row 1 is the image of `x_i`, row 2 of `y_i`.
    inv: Matrix2,
}

impl Action {
    pub fn new(field: &FieldContext, g: &Matrix2) -> Result<Action> {
        Ok(Action { inv: g.inverse(field)? })
    }

    pub fn is_monomial(&self) -> bool {
        self.inv.is_monomial()
    }

    /// Image of a monomial when the element is diagonal or antidiagonal.
    pub fn on_monomial(&self, field: &FieldContext, mono: &Monomial) -> Option<(Monomial, Fe)> {
        let (xs, ys) = mono.xy_degrees();
        let t = &self.inv;
        if t.b.is_zero() && t.c.is_zero() {
            let c = field.mul(pow_u(field, t.a, xs), pow_u(field, t.d, ys));
            Some((*mono, c))
        } else if t.a.is_zero() && t.d.is_zero() {
            let c = field.mul(pow_u(field, t.b, xs), pow_u(field, t.c, ys));
            Some((mono.swap_xy(), c))
        } else {
            None
        }
    }

    pub fn apply(&self, ring: &Ring, p: &Polynomial) -> Result<Polynomial> {
        ring.check(p)?;
        let field = ring.field();
        if self.is_monomial() {
            let mut out = ring.zero();
            for (m, c) in p.terms() {
                let (img, k) = self.on_monomial(field, m).expect("monomial element");
                out.add_term(img, field.mul(c, k));
            }
            return Ok(out);
        }
        let t = &self.inv;
        let m = ring.m();
        let mut images = Vec::with_capacity(2 * m);
        for i in 0..m {
            let mut img = ring.scale(&ring.x(i), t.a)?;
            img.add_assign(&ring.scale(&ring.y(i), t.b)?);
            images.push(img);
        }
        for i in 0..m {
            let mut img = ring.scale(&ring.x(i), t.c)?;
            img.add_assign(&ring.scale(&ring.y(i), t.d)?);
            images.push(img);
        }
        ring.substitute_linear(p, &images)
    }
}

fn pow_u(field: &FieldContext, a: Fe, e: usize) -> Fe {
    if e == 0 {
        return Fe::ONE;
    }
    if a.is_zero() {
        return Fe::ZERO;
    }
    field.pow(a, (e % (field.q() as usize - 1)) as i64).expect("unit power")
}

/// `g . p`.
pub fn act(ring: &Ring, g: &Matrix2, p: &Polynomial) -> Result<Polynomial> {
    Action::new(ring.field(), g)?.apply(ring, p)
}

fn check_table(ring: &Ring, table: &GroupTable) -> Result<()> {
    if ring.field() != table.field() {
        return Err(usage("group and ring are defined over different fields"));
    }
    Ok(())
}

/// Whether every generator of the table fixes `f`.
pub fn is_invariant(ring: &Ring, table: &GroupTable, f: &Polynomial) -> Result<bool> {
    check_table(ring, table)?;
    for g in table.generators() {
        if act(ring, g, f)? != *f {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `sum_{g in table} g . f`.
pub fn full_transfer(ring: &Ring, table: &GroupTable, f: &Polynomial) -> Result<Polynomial> {
    check_table(ring, table)?;
    let mut out = ring.zero();
    for g in table.elements() {
        out.add_assign(&act(ring, g, f)?);
    }
    Ok(out)
}

/// `R(f) = sum_{a in F_q^x} tau_a . f` for a `sigma`-fixed `f`.
pub fn relative_transfer(ring: &Ring, f: &Polynomial) -> Result<Polynomial> {
    ring.check(f)?;
    if f.swap_xy() != *f {
        return Err(Error::Precondition(format!("not fixed by sigma: {f}")));
    }
    let field = ring.field();
    let mut out = ring.zero();
    for a in field.units() {
        out.add_assign(&act(ring, &Matrix2::tau(field, a)?, f)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(s: u32) -> Arc<FieldContext> {
        Arc::new(FieldContext::new(s).unwrap())
    }

    #[test]
    fn orthogonality_examples() {
        let f = field(2);
        assert!(is_orthogonal(&f, &Matrix2::SIGMA, GroupKind::Plus).unwrap());
        assert!(is_orthogonal(&f, &Matrix2::IDENTITY, GroupKind::Plus).unwrap());
        assert!(is_orthogonal(&f, &Matrix2::IDENTITY, GroupKind::Minus).unwrap());
        let g = f.primitive();
        let dg = Matrix2::new(g, Fe::ZERO, Fe::ZERO, g);
        assert!(!is_orthogonal(&f, &dg, GroupKind::Plus).unwrap());
        let singular = Matrix2::new(Fe::ONE, Fe::ONE, Fe::ONE, Fe::ONE);
        assert!(matches!(is_orthogonal(&f, &singular, GroupKind::Plus), Err(Error::Usage(_))));
    }

    #[test]
    fn diag_g_g_fails_by_direct_arithmetic() {
        // T O+ T^t = g^2 O+, so the difference has off-diagonal entries
        // (g^2 + 1, 0): not symmetric.
        let f = field(2);
        let g = f.primitive();
        let t = Matrix2::new(g, Fe::ZERO, Fe::ZERO, g);
        let o = gram_matrix(&f, GroupKind::Plus).unwrap();
        let m = t.mul(&f, &o).mul(&f, &t.transpose());
        assert_eq!(m.b + o.b, f.square(g) + Fe::ONE);
        assert!(!(m.b + o.b).is_zero());
        assert!((m.c + o.c).is_zero());
    }

    #[test]
    fn group_orders() {
        for (s, plus, minus) in [(2, 6, 10), (3, 14, 18), (4, 30, 34)] {
            let f = field(s);
            let p = build_group(&f, GroupKind::Plus).unwrap();
            let n = build_group(&f, GroupKind::Minus).unwrap();
            assert_eq!(p.order(), plus);
            assert_eq!(n.order(), minus);
            assert!(n.notes().is_empty(), "{:?}", n.notes());
            assert_eq!(build_group(&f, GroupKind::Sylow).unwrap().order(), 2);
        }
    }

    #[test]
    fn groups_are_closed() {
        let f = field(3);
        for kind in [GroupKind::Plus, GroupKind::Minus, GroupKind::Sylow] {
            let t = build_group(&f, kind).unwrap();
            assert!(t.contains(&Matrix2::IDENTITY));
            for g in t.elements() {
                assert!(t.contains(&g.inverse(&f).unwrap()));
                for h in t.elements() {
                    assert!(t.contains(&g.mul(&f, h)));
                }
            }
        }
    }

    #[test]
    fn minus_family_sizes() {
        for s in 2..=5 {
            let f = field(s);
            let taus = minus_tau_family(&f).unwrap();
            assert_eq!(taus.len(), f.q() as usize + 1);
            assert!(taus.contains(&Matrix2::IDENTITY));
        }
    }

    #[test]
    fn sigma_and_tau_act_as_stated() {
        let f = field(2);
        let r = Ring::new(f.clone(), 2).unwrap();
        let p = r.parse("x1*x2^2").unwrap();
        assert_eq!(act(&r, &Matrix2::SIGMA, &p).unwrap(), r.parse("y1*y2^2").unwrap());
        let a = f.primitive();
        let ta = Matrix2::tau(&f, a).unwrap();
        let ai = f.inv(a).unwrap();
        assert_eq!(act(&r, &ta, &r.x(0)).unwrap(), r.scale(&r.x(0), ai).unwrap());
        assert_eq!(act(&r, &ta, &r.y(1)).unwrap(), r.scale(&r.y(1), a).unwrap());
    }

    #[test]
    fn action_composes() {
        let f = field(2);
        let r = Ring::new(f.clone(), 1).unwrap();
        let t = build_group(&f, GroupKind::Minus).unwrap();
        let p = r.parse("x1^3 + 2*x1*y1^2 + 3*y1").unwrap();
        for g in t.elements() {
            for h in t.elements() {
                let gh = g.mul(&f, h);
                let lhs = act(&r, &gh, &p).unwrap();
                let rhs = act(&r, g, &act(&r, h, &p).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn transfer_examples() {
        let f = field(2);
        let r = Ring::new(f.clone(), 1).unwrap();
        let n1 = r.parse("x1*y1").unwrap();
        assert_eq!(relative_transfer(&r, &n1).unwrap(), n1);
        assert!(matches!(relative_transfer(&r, &r.x(0)), Err(Error::Precondition(_))));
        let minus = build_group(&f, GroupKind::Minus).unwrap();
        assert!(full_transfer(&r, &minus, &r.zero()).unwrap().is_zero());
        assert!(full_transfer(&r, &minus, &r.one()).unwrap().is_zero());
        let e = r.parse("x1*y1^4 + x1^4*y1").unwrap();
        assert!(is_invariant(&r, &minus, &e).unwrap());
    }

    #[test]
    fn transfer_of_x_squared_vanishes_for_minus() {
        // Tr(x^2) = Tr(x)^2 in characteristic 2, and O2- fixes no linear form.
        for s in 2..=3 {
            let f = field(s);
            let r = Ring::new(f.clone(), 1).unwrap();
            let minus = build_group(&f, GroupKind::Minus).unwrap();
            let tx = full_transfer(&r, &minus, &r.x(0)).unwrap();
            assert!(tx.is_zero());
            let tx2 = full_transfer(&r, &minus, &r.pow(&r.x(0), 2).unwrap()).unwrap();
            assert!(tx2.is_zero());
        }
    }
}
