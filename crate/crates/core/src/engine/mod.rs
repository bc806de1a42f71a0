//! Degree-by-degree verification of generation, minimality, module and ideal
//! structure of the invariant rings.
//!
//! Every group handled here acts diagonally on the m copies, so the invariant
//! ring is graded by the multidegree `mu in N^m` (degree in `x_i, y_i` per
//! copy). All spaces are built piece by piece over multidegrees and summed to
//! total degrees for reporting; pieces are visited in ascending total degree
//! and, within a degree, in ascending lexicographic order of `mu`.

mod free_module;
mod generation;
mod hilbert;
mod identities;
mod minimality;
mod transfer;
mod univariate;

pub use free_module::{free_module_basis, free_module_check, u_power_basis, ModuleSpan};
pub use generation::generation_check;
pub use hilbert::hilbert_ideal_check;
pub use identities::{identity_suite, v_n};
pub use minimality::{minimality_report, MinimalityData};
pub use transfer::{transfer_membership_suite, TransferBounds};
pub use univariate::{minus_generator_count, minus_univariate_report, plus_univariate_report};

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{usage, Result};
use crate::families::compositions;
use crate::field::FieldContext;
use crate::groups::{Action, GroupKind, GroupTable};
use crate::linalg::{fixed_subspace, MonomialSpace, PackedRow, Subspace};
use crate::poly::{Monomial, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Computed and recorded without being asserted either way.
    Reported,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reported => "reported",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub q: u32,
    pub m: usize,
    pub group: GroupKind,
    pub cutoff: usize,
}

/// Per-degree numbers; fields a check does not compute stay `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeRecord {
    pub d: usize,
    pub dim_invariants: Option<usize>,
    pub dim_closure: Option<usize>,
    pub dim_decomposables: Option<usize>,
    pub minimal_generators: Option<usize>,
    pub series_coefficient: Option<i64>,
    pub dim_span: Option<usize>,
    pub product_count: Option<usize>,
    pub dim_ideal_generators: Option<usize>,
    pub dim_ideal_invariants: Option<usize>,
}

impl DegreeRecord {
    pub fn new(d: usize) -> DegreeRecord {
        DegreeRecord {
            d,
            ..DegreeRecord::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    /// The statement being checked, in words.
    pub claim: String,
    pub status: Status,
    /// Polynomials exhibiting a failure, or the objects a reported value is about.
    pub witnesses: Vec<Polynomial>,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: &str, claim: &str, status: Status, detail: String) -> Verdict {
        Verdict {
            name: String::from(name),
            claim: String::from(claim),
            status,
            witnesses: Vec::new(),
            detail,
        }
    }

    pub fn with_witnesses(mut self, witnesses: Vec<Polynomial>) -> Verdict {
        self.witnesses = witnesses;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoetherNumber {
    pub value: usize,
    /// True when the cutoff lies beyond `value`, so no minimal generator was
    /// found in the degrees checked above it.
    pub exact: bool,
    pub cutoff: usize,
    pub expected: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedReport {
    pub params: Params,
    pub degrees: Vec<DegreeRecord>,
    pub verdicts: Vec<Verdict>,
    pub noether: Option<NoetherNumber>,
}

impl GradedReport {
    pub fn new(params: Params) -> GradedReport {
        let degrees = (0..=params.cutoff).map(DegreeRecord::new).collect();
        GradedReport {
            params,
            degrees,
            verdicts: Vec::new(),
            noether: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub(crate) fn record(&mut self, d: usize) -> &mut DegreeRecord {
        &mut self.degrees[d]
    }
}

/// Default cutoff `max(2(q-1) + 2, 2m)`.
pub fn default_cutoff(q: u32, m: usize) -> usize {
    (2 * (q as usize - 1) + 2).max(2 * m)
}

/// All multidegrees of total degree `d`, ascending lexicographically.
pub fn multidegrees(m: usize, d: usize) -> Vec<Vec<u16>> {
    compositions(m, d)
}

/// All multidegrees with total degree in `1..=cutoff`, by degree then lex.
pub fn multidegrees_up_to(m: usize, cutoff: usize) -> Vec<Vec<u16>> {
    (1..=cutoff).flat_map(|d| multidegrees(m, d)).collect()
}

pub(crate) fn total(mu: &[u16]) -> usize {
    mu.iter().map(|&e| e as usize).sum()
}

/// `mu - nu` when `nu <= mu` componentwise.
pub(crate) fn sub_mdeg(mu: &[u16], nu: &[u16]) -> Option<Vec<u16>> {
    mu.iter().zip(nu).map(|(&a, &b)| a.checked_sub(b)).collect()
}

/// Every `nu <= mu` componentwise, in mixed-radix order (first copy fastest).
pub(crate) fn sub_multidegrees(mu: &[u16]) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut nu = vec![0u16; mu.len()];
    loop {
        out.push(nu.clone());
        let mut i = 0;
        while i < mu.len() && nu[i] == mu[i] {
            nu[i] = 0;
            i += 1;
        }
        if i == mu.len() {
            break;
        }
        nu[i] += 1;
    }
    out
}

pub(crate) fn multidegree_of(p: &Polynomial) -> Result<Vec<u16>> {
    p.multidegree()
        .ok_or_else(|| usage(format!("{p} is zero or not multihomogeneous")))
}

/// The row of `mono * p` in `space`, built term by term.
pub(crate) fn shifted_row(field: &FieldContext, space: &MonomialSpace, mono: &Monomial, p: &Polynomial) -> Result<PackedRow> {
    let mut row = PackedRow::zero(field.s(), space.len());
    for (t, c) in p.terms() {
        let img = mono.checked_mul(t)?;
        let j = space
            .index_of(&img)
            .ok_or_else(|| usage(format!("{img} lies outside the coordinate space")))?;
        row.add_at(j, c);
    }
    Ok(row)
}

/// A group acting on `F_q[mV]`, with the invariant pieces computed so far.
#[derive(Clone, Debug)]
pub struct InvariantRing {
    ring: Ring,
    table: GroupTable,
    actions: Vec<Action>,
    spaces: BTreeMap<Vec<u16>, Arc<MonomialSpace>>,
    pieces: BTreeMap<Vec<u16>, Arc<Subspace>>,
    bases: BTreeMap<Vec<u16>, Arc<Vec<Polynomial>>>,
}

impl InvariantRing {
    pub fn new(ring: Ring, table: GroupTable) -> Result<InvariantRing> {
        if ring.field() != table.field() {
            return Err(usage("group and ring are defined over different fields"));
        }
        let actions = table
            .generators()
            .iter()
            .map(|g| Action::new(ring.field(), g))
            .collect::<Result<Vec<_>>>()?;
        Ok(InvariantRing {
            ring,
            table,
            actions,
            spaces: BTreeMap::new(),
            pieces: BTreeMap::new(),
            bases: BTreeMap::new(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn field(&self) -> &Arc<FieldContext> {
        self.ring.field()
    }

    pub fn q(&self) -> u32 {
        self.ring.field().q()
    }

    pub fn m(&self) -> usize {
        self.ring.m()
    }

    pub fn kind(&self) -> GroupKind {
        self.table.kind()
    }

    pub fn params(&self, cutoff: usize) -> Params {
        Params {
            q: self.q(),
            m: self.m(),
            group: self.kind(),
            cutoff,
        }
    }

    pub fn space(&mut self, mu: &[u16]) -> Arc<MonomialSpace> {
        self.spaces
            .entry(mu.to_vec())
            .or_insert_with(|| Arc::new(MonomialSpace::multidegree(mu)))
            .clone()
    }

    /// The invariants of multidegree `mu`.
    pub fn piece(&mut self, mu: &[u16]) -> Arc<Subspace> {
        if let Some(p) = self.pieces.get(mu) {
            return p.clone();
        }
        let space = self.space(mu);
        let piece = Arc::new(fixed_subspace(self.ring.field(), &space, &self.actions));
        self.pieces.insert(mu.to_vec(), piece.clone());
        piece
    }

    /// Dimension of the invariants of total degree `d`.
    pub fn dim(&mut self, d: usize) -> usize {
        if d == 0 {
            return 1;
        }
        multidegrees(self.m(), d).iter().map(|mu| self.piece(mu).rank()).sum()
    }

    /// Echelon basis of the invariants of multidegree `mu`.
    pub fn basis(&mut self, mu: &[u16]) -> Arc<Vec<Polynomial>> {
        if let Some(b) = self.bases.get(mu) {
            return b.clone();
        }
        let b = Arc::new(if total(mu) == 0 {
            vec![self.ring.one()]
        } else {
            self.piece(mu).basis()
        });
        self.bases.insert(mu.to_vec(), b.clone());
        b
    }
}
