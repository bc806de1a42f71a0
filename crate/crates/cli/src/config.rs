use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use modinv_core::field::modulus_from_exponents;
use modinv_core::GroupKind;

use crate::run::RunError;

#[derive(Parser, Debug)]
#[command(name = "modinv", version)]
#[command(about = "Exact checks on vector invariants of O2+(F_q) and O2-(F_q) in characteristic 2")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Degree cutoff D; defaults to max(2(q-1)+2, 2m)
    #[arg(long, global = true)]
    pub max_degree: Option<usize>,

    /// JSON file of invariant dimensions reused by `dims`
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,

    /// Field modulus as comma-separated exponents, e.g. 3,1,0 for x^3+x+1
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Args, Debug, Clone)]
pub struct Params {
    /// Field exponent s, so q = 2^s
    #[arg(long = "q-exp", default_value_t = 2)]
    pub q_exp: u32,

    /// Number of copies of the natural representation
    #[arg(long, default_value_t = 2)]
    pub m: usize,

    /// Group type
    #[arg(long = "type", value_enum, default_value_t = GroupArg::Plus)]
    pub group: GroupArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Enumerate the group and cross-check it against brute force
    Group(Params),
    /// List the generator families and check their invariance
    Generators {
        #[command(flatten)]
        params: Params,
        /// Only the minimal generating set
        #[arg(long)]
        minimal: bool,
    },
    /// Invariant dimensions per degree
    Dims(Params),
    /// Run verification suites
    Verify {
        #[command(flatten)]
        params: Params,
        #[command(flatten)]
        checks: VerifyFlags,
    },
    /// Noether number from the minimal-generator counts
    Noether(Params),
    /// O2- reports: one copy against its series and E, Q; two copies' generator count
    O2minus {
        #[arg(long = "q-exp", default_value_t = 2)]
        q_exp: u32,
    },
    /// Group, dimensions and every applicable suite
    Report(Params),
}

#[derive(Args, Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyFlags {
    #[arg(long)]
    pub generation: bool,
    #[arg(long)]
    pub minimality: bool,
    #[arg(long)]
    pub free_module: bool,
    #[arg(long)]
    pub hilbert_ideal: bool,
    #[arg(long)]
    pub transfer_suite: bool,
    #[arg(long)]
    pub identity_suite: bool,
    #[arg(long)]
    pub all: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupArg {
    Plus,
    Minus,
    Sylow,
}

impl From<GroupArg> for GroupKind {
    fn from(g: GroupArg) -> GroupKind {
        match g {
            GroupArg::Plus => GroupKind::Plus,
            GroupArg::Minus => GroupKind::Minus,
            GroupArg::Sylow => GroupKind::Sylow,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Group,
    Generators { minimal: bool },
    Dims,
    Verify(VerifyFlags),
    Noether,
    O2minus,
    Report,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Group => "group",
            Task::Generators { .. } => "generators",
            Task::Dims => "dims",
            Task::Verify(_) => "verify",
            Task::Noether => "noether",
            Task::O2minus => "o2minus",
            Task::Report => "report",
        }
    }
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub s: u32,
    pub m: usize,
    pub group: GroupKind,
    pub cutoff: Option<usize>,
    pub task: Task,
    pub format: Format,
    pub cache: Option<PathBuf>,
    /// Modulus as a bit pattern, already checked to have degree s.
    pub modulus: Option<u32>,
}

impl RunConfig {
    pub fn new(s: u32, m: usize, group: GroupKind, task: Task) -> RunConfig {
        RunConfig {
            s,
            m,
            group,
            cutoff: None,
            task,
            format: Format::Json,
            cache: None,
            modulus: None,
        }
    }
}

impl TryFrom<Cli> for RunConfig {
    type Error = RunError;

    fn try_from(cli: Cli) -> Result<RunConfig, RunError> {
        let (params, task) = match cli.command {
            Command::Group(p) => (p, Task::Group),
            Command::Generators { params, minimal } => (params, Task::Generators { minimal }),
            Command::Dims(p) => (p, Task::Dims),
            Command::Verify { params, checks } => {
                if checks == VerifyFlags::default() {
                    return Err(RunError::Usage("verify needs at least one check flag or --all".into()));
                }
                (params, Task::Verify(checks))
            }
            Command::Noether(p) => (p, Task::Noether),
            Command::O2minus { q_exp } => (
                Params {
                    q_exp,
                    m: 1,
                    group: GroupArg::Minus,
                },
                Task::O2minus,
            ),
            Command::Report(p) => (p, Task::Report),
        };
        if params.q_exp < 1 || params.q_exp > 15 {
            return Err(RunError::Usage(format!("--q-exp must lie in 1..=15, got {}", params.q_exp)));
        }
        if params.m < 1 || params.m > 16 {
            return Err(RunError::Usage(format!("--m must lie in 1..=16, got {}", params.m)));
        }
        let modulus = match cli.modulus {
            Some(exps) => {
                let bits = modulus_from_exponents(&exps).map_err(|e| RunError::Usage(e.to_string()))?;
                if 31 - bits.leading_zeros() != params.q_exp {
                    return Err(RunError::Usage(format!(
                        "--modulus has degree {}, but --q-exp is {}",
                        31 - bits.leading_zeros(),
                        params.q_exp
                    )));
                }
                Some(bits)
            }
            None => None,
        };
        Ok(RunConfig {
            s: params.q_exp,
            m: params.m,
            group: params.group.into(),
            cutoff: cli.max_degree,
            task,
            format: cli.format,
            cache: cli.cache,
            modulus,
        })
    }
}
