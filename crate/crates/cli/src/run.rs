use std::sync::Arc;
use std::time::Instant;

use modinv_core::engine::{
    default_cutoff, free_module_check, generation_check, hilbert_ideal_check, identity_suite, minimality_report,
    minus_generator_count, minus_univariate_report, plus_univariate_report, transfer_membership_suite, GradedReport,
    InvariantRing, Status, TransferBounds,
};
use modinv_core::families::{minus_generators, plus_generators, sylow_generators, GeneratorSet};
use modinv_core::groups::build_group;
use modinv_core::{Error, FieldContext, GroupKind, GroupTable, Ring};

use crate::cache::DimCache;
use crate::config::{RunConfig, Task, VerifyFlags};
use crate::report::{CheckRecord, DegreeRow, FieldInfo, ReportDocument, SuiteTime, Timing};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Engine(Error),
}

impl From<Error> for RunError {
    fn from(e: Error) -> RunError {
        match e {
            Error::Usage(msg) => RunError::Usage(msg),
            e @ Error::Reducible { .. } => RunError::Usage(e.to_string()),
            e => RunError::Engine(e),
        }
    }
}

/// The suites `verify` can run, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    Univariate,
    Generation,
    Minimality,
    FreeModule,
    HilbertIdeal,
    Transfer,
    Identities,
}

impl Suite {
    const ALL: [Suite; 7] = [
        Suite::Univariate,
        Suite::Generation,
        Suite::Minimality,
        Suite::FreeModule,
        Suite::HilbertIdeal,
        Suite::Transfer,
        Suite::Identities,
    ];

    fn name(self) -> &'static str {
        match self {
            Suite::Univariate => "univariate",
            Suite::Generation => "generation",
            Suite::Minimality => "minimality",
            Suite::FreeModule => "free-module",
            Suite::HilbertIdeal => "hilbert-ideal",
            Suite::Transfer => "transfer-suite",
            Suite::Identities => "identity-suite",
        }
    }

    fn requested(self, f: &VerifyFlags) -> bool {
        match self {
            Suite::Univariate => false,
            Suite::Generation => f.generation,
            Suite::Minimality => f.minimality,
            Suite::FreeModule => f.free_module,
            Suite::HilbertIdeal => f.hilbert_ideal,
            Suite::Transfer => f.transfer_suite,
            Suite::Identities => f.identity_suite,
        }
    }

    /// `None` when the suite applies, else the reason it does not.
    fn inapplicable(self, group: GroupKind, m: usize) -> Option<&'static str> {
        match self {
            Suite::Univariate if m != 1 || group == GroupKind::Sylow => Some("needs m = 1 and the plus or minus type"),
            Suite::FreeModule | Suite::Identities if group != GroupKind::Plus || m != 2 => {
                Some("needs --type plus and --m 2")
            }
            Suite::HilbertIdeal if group != GroupKind::Plus => Some("needs --type plus"),
            Suite::Transfer if group == GroupKind::Minus => Some("needs --type plus or sylow"),
            _ => None,
        }
    }
}

fn selected_suites(flags: &VerifyFlags, group: GroupKind, m: usize) -> Result<Vec<Suite>, RunError> {
    let mut out = Vec::new();
    for s in Suite::ALL {
        let why = s.inapplicable(group, m);
        if flags.all {
            if why.is_none() {
                out.push(s);
            }
        } else if s.requested(flags) {
            if let Some(why) = why {
                return Err(RunError::Usage(format!("--{} {why}", s.name())));
            }
            out.push(s);
        }
    }
    Ok(out)
}

struct Runner<'a> {
    config: &'a RunConfig,
    field: Arc<FieldContext>,
    cache: DimCache,
    rings: Vec<InvariantRing>,
    checks: Vec<CheckRecord>,
    timing: Vec<SuiteTime>,
}

impl<'a> Runner<'a> {
    fn q(&self) -> u32 {
        self.field.q()
    }

    /// Builds the group, turning a brute-force disagreement into a failed record.
    fn table(&mut self, kind: GroupKind) -> Result<Option<GroupTable>, RunError> {
        match build_group(&self.field, kind) {
            Ok(t) => Ok(Some(t)),
            Err(Error::GroupMismatch { enumerated, brute_force }) => {
                let list = |v: &[modinv_core::Matrix2]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; ");
                self.checks.push(CheckRecord::new(
                    "group.cross-validation",
                    "the enumerated group equals the set of all invertible matrices preserving the quadratic form",
                    Status::Fail,
                    format!(
                        "enumerated {} elements: {}; brute force found {}: {}",
                        enumerated.len(),
                        list(&enumerated),
                        brute_force.len(),
                        list(&brute_force)
                    ),
                ));
                Ok(None)
            }
            Err(e) => Err(e.into()),
        }
    }

    /// The invariant ring for `(kind, m)`, shared between suites.
    fn inv(&mut self, kind: GroupKind, m: usize) -> Result<Option<&mut InvariantRing>, RunError> {
        let pos = self.rings.iter().position(|r| r.kind() == kind && r.m() == m);
        let pos = match pos {
            Some(p) => p,
            None => {
                let Some(table) = self.table(kind)? else { return Ok(None) };
                let ring = Ring::new(self.field.clone(), m)?;
                self.rings.push(InvariantRing::new(ring, table)?);
                self.rings.len() - 1
            }
        };
        Ok(Some(&mut self.rings[pos]))
    }

    fn remember(&mut self, report: &GradedReport) {
        let p = &report.params;
        for r in &report.degrees {
            if let Some(dim) = r.dim_invariants {
                self.cache.put(p.q, p.m, p.group, r.d, dim);
            }
        }
    }

    /// Times `body`, files its records under `suite`, and turns engine
    /// errors other than usage errors into failed records.
    fn suite(
        &mut self,
        suite: &str,
        body: impl FnOnce(&mut Self) -> Result<Vec<GradedReport>, RunError>,
    ) -> Result<(), RunError> {
        let start = Instant::now();
        match body(self) {
            Ok(reports) => {
                for r in &reports {
                    self.remember(r);
                    self.checks.extend(CheckRecord::from_report(suite, r));
                }
            }
            Err(RunError::Engine(e)) => self.checks.push(CheckRecord::new(
                format!("{suite}.error"),
                "the suite runs to completion",
                Status::Fail,
                e.to_string(),
            )),
            Err(e) => return Err(e),
        }
        self.timing.push(SuiteTime {
            suite: suite.to_string(),
            ms: start.elapsed().as_secs_f64() * 1e3,
        });
        Ok(())
    }

    fn cutoff(&self, m: usize) -> usize {
        self.config.cutoff.unwrap_or_else(|| default_cutoff(self.q(), m))
    }

    fn generators(&mut self, kind: GroupKind, m: usize, minimal: bool) -> Result<Option<GeneratorSet>, RunError> {
        let Some(inv) = self.inv(kind, m)? else { return Ok(None) };
        let ring = inv.ring().clone();
        let set = match kind {
            GroupKind::Plus => plus_generators(&ring)?,
            GroupKind::Sylow => sylow_generators(&ring)?,
            GroupKind::Minus => minus_generators(&ring, inv.table())?.0,
        };
        Ok(Some(if minimal { set.minimal() } else { set }))
    }

    fn group(&mut self) -> Result<(), RunError> {
        let kind = self.config.group;
        let q = self.q();
        let start = Instant::now();
        if let Some(t) = self.table(kind)? {
            let expected = kind.order(q);
            self.checks.push(CheckRecord::new(
                "group.order",
                match kind {
                    GroupKind::Plus => "O2+(F_q) has 2(q-1) elements",
                    GroupKind::Minus => "O2-(F_q) has 2(q+1) elements",
                    GroupKind::Sylow => "the Sylow 2-subgroup {1, sigma} has 2 elements",
                },
                Status::from_bool(t.order() == expected),
                format!("{} elements; expected {expected}", t.order()),
            ));
            let mut detail = String::from("enumeration agrees with the brute-force search over invertible matrices");
            for n in t.notes() {
                detail.push_str("; ");
                detail.push_str(n);
            }
            self.checks.push(CheckRecord::new(
                "group.cross-validation",
                "the enumerated group equals the set of all invertible matrices preserving the quadratic form",
                Status::Pass,
                detail,
            ));
            let list = |v: &[modinv_core::Matrix2]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("; ");
            self.checks.push(CheckRecord::new(
                "group.elements",
                "the group elements and the generators used for invariance tests",
                Status::Reported,
                format!("elements: {}; generators: {}", list(t.elements()), list(t.generators())),
            ));
        }
        self.timing.push(SuiteTime {
            suite: "group".into(),
            ms: start.elapsed().as_secs_f64() * 1e3,
        });
        Ok(())
    }

    fn dims(&mut self) -> Result<(), RunError> {
        let (kind, m) = (self.config.group, self.config.m);
        let cutoff = self.cutoff(m);
        let q = self.q();
        let start = Instant::now();
        let mut rows = Vec::new();
        let mut cached = 0;
        for d in 0..=cutoff {
            let dim = match self.cache.get(q, m, kind, d) {
                Some(v) => {
                    cached += 1;
                    v
                }
                None => {
                    let Some(inv) = self.inv(kind, m)? else { return Ok(()) };
                    let v = inv.dim(d);
                    self.cache.put(q, m, kind, d, v);
                    v
                }
            };
            rows.push(DegreeRow {
                d,
                dim_invariants: Some(dim),
                ..DegreeRow::default()
            });
        }
        let mut rec = CheckRecord::new(
            "dims.dimensions",
            "dimensions of the graded pieces of the invariant ring",
            Status::Reported,
            format!("degrees 0..={cutoff}; {cached} taken from the cache"),
        );
        rec.degrees = rows;
        self.checks.push(rec);
        self.timing.push(SuiteTime {
            suite: "dims".into(),
            ms: start.elapsed().as_secs_f64() * 1e3,
        });
        Ok(())
    }

    fn generators_listing(&mut self, minimal: bool) -> Result<(), RunError> {
        let (kind, m) = (self.config.group, self.config.m);
        self.suite("generators", |r| {
            let Some(set) = r.generators(kind, m, minimal)? else { return Ok(vec![]) };
            let Some(inv) = r.inv(kind, m)? else { return Ok(vec![]) };
            let bad = set.non_invariant(inv.table())?;
            let labels: Vec<&str> = set.items().iter().map(|g| g.label.as_str()).collect();
            let mut listing = CheckRecord::new(
                "generators.list",
                "the generator families for this group and number of copies",
                Status::Reported,
                format!("{} generators: {}", set.len(), labels.join(", ")),
            );
            listing.witnesses = set.items().iter().map(|g| g.poly.to_string()).collect();
            r.checks.push(listing);
            r.checks.push(CheckRecord::new(
                "generators.invariant",
                "every listed generator is fixed by the group",
                Status::from_bool(bad.is_empty()),
                if bad.is_empty() {
                    String::from("all generators are invariant")
                } else {
                    format!("not invariant: {}", bad.join(", "))
                },
            ));
            Ok(vec![])
        })
    }

    fn verify(&mut self, flags: &VerifyFlags) -> Result<(), RunError> {
        let (kind, m) = (self.config.group, self.config.m);
        let cutoff = self.cutoff(m);
        for s in selected_suites(flags, kind, m)? {
            self.suite(s.name(), |r| {
                if s == Suite::Transfer {
                    let ring = Ring::new(r.field.clone(), m)?;
                    let mut bounds = TransferBounds::for_q(r.q());
                    if let Some(d) = r.config.cutoff {
                        bounds.max_alpha = d;
                    }
                    return Ok(vec![transfer_membership_suite(&ring, bounds)?]);
                }
                let gens = match s {
                    Suite::Generation | Suite::Minimality => {
                        match r.generators(kind, m, s == Suite::Minimality)? {
                            Some(g) => Some(g),
                            None => return Ok(vec![]),
                        }
                    }
                    _ => None,
                };
                let Some(inv) = r.inv(kind, m)? else { return Ok(vec![]) };
                let report = match s {
                    Suite::Univariate if kind == GroupKind::Plus => plus_univariate_report(inv, cutoff)?,
                    Suite::Univariate => minus_univariate_report(inv, cutoff)?,
                    Suite::Generation => generation_check(inv, gens.as_ref().expect("generators"), cutoff)?,
                    Suite::Minimality => minimality_report(inv, gens.as_ref().expect("generators"), cutoff)?.0,
                    Suite::FreeModule => free_module_check(inv, cutoff)?,
                    Suite::HilbertIdeal => hilbert_ideal_check(inv, cutoff)?,
                    Suite::Identities => identity_suite(inv)?,
                    Suite::Transfer => unreachable!(),
                };
                Ok(vec![report])
            })?;
        }
        Ok(())
    }

    fn noether(&mut self) -> Result<(), RunError> {
        let (kind, m) = (self.config.group, self.config.m);
        let cutoff = self.cutoff(m);
        self.suite("noether", |r| {
            let Some(gens) = r.generators(kind, m, true)? else { return Ok(vec![]) };
            let Some(inv) = r.inv(kind, m)? else { return Ok(vec![]) };
            Ok(vec![minimality_report(inv, &gens, cutoff)?.0])
        })
    }

    fn o2minus(&mut self) -> Result<(), RunError> {
        let q = self.q() as usize;
        let one = self.config.cutoff.unwrap_or(20);
        let two = self.config.cutoff.unwrap_or(2 * (q + 1) + 2);
        self.suite("o2minus-one-copy", |r| {
            let Some(inv) = r.inv(GroupKind::Minus, 1)? else { return Ok(vec![]) };
            Ok(vec![minus_univariate_report(inv, one)?])
        })?;
        self.suite("o2minus-two-copies", |r| {
            let Some(inv) = r.inv(GroupKind::Minus, 2)? else { return Ok(vec![]) };
            Ok(vec![minus_generator_count(inv, two)?])
        })
    }
}

/// Runs one invocation and assembles its report.
pub fn run(config: &RunConfig) -> Result<ReportDocument, RunError> {
    let start = Instant::now();
    let field = Arc::new(FieldContext::with_modulus(config.s, config.modulus)?);
    let cache = match &config.cache {
        Some(p) => DimCache::load(p),
        None => DimCache::disabled(),
    };
    let mut runner = Runner {
        config,
        field: field.clone(),
        cache,
        rings: Vec::new(),
        checks: Vec::new(),
        timing: Vec::new(),
    };
    match config.task {
        Task::Group => runner.group()?,
        Task::Generators { minimal } => runner.generators_listing(minimal)?,
        Task::Dims => runner.dims()?,
        Task::Verify(flags) => runner.verify(&flags)?,
        Task::Noether => runner.noether()?,
        Task::O2minus => runner.o2minus()?,
        Task::Report => {
            runner.group()?;
            runner.dims()?;
            runner.verify(&VerifyFlags {
                all: true,
                ..VerifyFlags::default()
            })?;
        }
    }
    if let Err(e) = runner.cache.save() {
        eprintln!("warning: cannot write cache: {e}");
    }
    Ok(ReportDocument {
        config: ReportDocument::echo(config),
        field: FieldInfo::of(&field),
        checks: runner.checks,
        timing: Timing {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            suites: runner.timing,
        },
    })
}
