use std::sync::Arc;

use proptest::prelude::*;

use modinv_core::groups::{act, build_group};
use modinv_core::linalg::{MonomialSpace, Subspace};
use modinv_core::*;

fn field(s: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(s).unwrap())
}

/// Random polynomial in `2m` variables from (exponent vector, coefficient) terms.
fn poly(ring: &Ring, terms: &[(Vec<u16>, u32)]) -> Polynomial {
    let mut p = ring.zero();
    for (e, c) in terms {
        let mono = Monomial::from_exponents(e).unwrap();
        p.add_term(mono, ring.field().element(*c % ring.field().q()).unwrap());
    }
    p
}

fn terms(nvars: usize) -> impl Strategy<Value = Vec<(Vec<u16>, u32)>> {
    prop::collection::vec((prop::collection::vec(0u16..3, nvars), 0u32..256), 0..5)
}

fn unit(q: u32) -> impl Strategy<Value = u32> {
    1..q
}

proptest! {
    #[test]
    fn field_mul_matches_schoolbook(s in 2u32..5, a in 0u32..16, b in 0u32..16, c in 0u32..16) {
        let f = field(s);
        let q = f.q();
        let (a, b, c) = (f.element(a % q).unwrap(), f.element(b % q).unwrap(), f.element(c % q).unwrap());
        prop_assert_eq!(f.mul(a, b), f.mul_schoolbook(a, b));
        prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn ring_axioms(p in terms(4), r in terms(4), t in terms(4)) {
        let ring = Ring::new(field(2), 2).unwrap();
        let (p, r, t) = (poly(&ring, &p), poly(&ring, &r), poly(&ring, &t));
        prop_assert_eq!(ring.mul(&p, &r).unwrap(), ring.mul(&r, &p).unwrap());
        prop_assert_eq!(
            ring.mul(&ring.mul(&p, &r).unwrap(), &t).unwrap(),
            ring.mul(&p, &ring.mul(&r, &t).unwrap()).unwrap()
        );
        prop_assert_eq!(
            ring.mul(&p, &ring.add(&r, &t).unwrap()).unwrap(),
            ring.add(&ring.mul(&p, &r).unwrap(), &ring.mul(&p, &t).unwrap()).unwrap()
        );
        prop_assert!(ring.add(&p, &p).unwrap().is_zero());
    }

    #[test]
    fn display_parses_back(p in terms(4)) {
        let ring = Ring::new(field(3), 2).unwrap();
        let p = poly(&ring, &p);
        prop_assert_eq!(ring.parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn action_is_multiplicative_and_composes(p in terms(4), r in terms(4), i in 0usize..10, j in 0usize..10) {
        let f = field(2);
        let ring = Ring::new(f.clone(), 2).unwrap();
        let table = build_group(&f, GroupKind::Minus).unwrap();
        let (p, r) = (poly(&ring, &p), poly(&ring, &r));
        let (g, h) = (table.elements()[i], table.elements()[j]);
        prop_assert_eq!(
            act(&ring, &g, &ring.mul(&p, &r).unwrap()).unwrap(),
            ring.mul(&act(&ring, &g, &p).unwrap(), &act(&ring, &g, &r).unwrap()).unwrap()
        );
        prop_assert_eq!(
            act(&ring, &g, &act(&ring, &h, &p).unwrap()).unwrap(),
            act(&ring, &g.mul(&f, &h), &p).unwrap()
        );
        let back = act(&ring, &g.inverse(&f).unwrap(), &act(&ring, &g, &p).unwrap()).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn monomial_fast_path_agrees_with_substitution(p in terms(4), a in unit(8)) {
        let f = field(3);
        let ring = Ring::new(f.clone(), 2).unwrap();
        let p = poly(&ring, &p);
        let g = Matrix2::tau(&f, f.element(a).unwrap()).unwrap().mul(&f, &Matrix2::SIGMA);
        let inv = g.inverse(&f).unwrap();
        // Variables are x1, x2, y1, y2; x_i -> row 1 of g^{-1}, y_i -> row 2.
        let row = |i: usize, c0: Fe, c1: Fe| {
            ring.add(&ring.scale(&ring.x(i), c0).unwrap(), &ring.scale(&ring.y(i), c1).unwrap()).unwrap()
        };
        let images = vec![row(0, inv.a, inv.b), row(1, inv.a, inv.b), row(0, inv.c, inv.d), row(1, inv.c, inv.d)];
        prop_assert_eq!(act(&ring, &g, &p).unwrap(), ring.substitute_linear(&p, &images).unwrap());
    }

    #[test]
    fn echelon_form_ignores_insertion_order(p in prop::collection::vec(terms(4), 1..8), shift in 0usize..8) {
        let f = field(2);
        let ring = Ring::new(f.clone(), 2).unwrap();
        let space = Arc::new(MonomialSpace::degree(4, 3));
        let polys: Vec<Polynomial> = p
            .iter()
            .map(|t| poly(&ring, t).graded_piece(3))
            .collect();
        let mut a = Subspace::new(f.clone(), space.clone());
        let mut b = Subspace::new(f.clone(), space);
        for x in &polys {
            a.insert_poly(x).unwrap();
        }
        let k = shift % polys.len();
        for x in polys[k..].iter().chain(&polys[..k]).rev() {
            b.insert_poly(x).unwrap();
        }
        prop_assert_eq!(a.pivots(), b.pivots());
        prop_assert_eq!(a.basis(), b.basis());
    }
}
