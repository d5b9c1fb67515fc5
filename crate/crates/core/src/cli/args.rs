use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

/// Exhaustive checks of monads, laws and bimorphisms on finite sets.
#[derive(Debug, Parser)]
#[command(name = "bimorph", version)]
pub struct Cli {
    /// Definition file (text format, or JSON when the name ends in .json).
    #[arg(long = "workspace", global = true, value_name = "PATH")]
    pub workspaces: Vec<PathBuf>,

    /// Largest intermediate set the engine may build.
    #[arg(long, global = true, env = "BIMORPH_BUDGET", default_value_t = 1_000_000)]
    pub budget: u64,

    /// Write the JSON report here; `-` writes it to stdout instead of the text report.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Largest test set for universally quantified checks.
    #[arg(long, global = true, default_value_t = 2)]
    pub max_size: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub monad: Option<String>,
    /// Named algebra or `free(<set>)`.
    #[arg(long)]
    pub left: Option<String>,
    #[arg(long)]
    pub right: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// A law family; without it the pair is tensored along `dst`.
    #[arg(long)]
    pub law: Option<String>,
    /// Source algebras for `--law`, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub algebras: Vec<String>,
    /// Target algebras to verify against; defaults to all small ones.
    #[arg(long = "target")]
    pub targets: Vec<String>,
    /// Largest carrier of the default targets (default: twice --max-size).
    #[arg(long)]
    pub target_max_size: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Monad laws on all sets up to --max-size.
    CheckMonad {
        #[arg(long)]
        monad: String,
    },
    /// Monad morphism laws for a family, a file or `identity(T)`, `unit(T)`, `maybe_to(S)`.
    CheckMorphism {
        #[arg(long)]
        sigma: String,
    },
    /// Strength axioms of the canonical strength.
    CheckStrength {
        #[arg(long)]
        monad: String,
    },
    /// Whether the two double strengths agree.
    CheckCommutative {
        #[arg(long)]
        monad: String,
    },
    /// Bilinearity of `--map` from `--left × --right` to `--target`, or a
    /// bimorphism along `--law` out of `--algebras`.
    CheckBimorphism {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        law: Option<String>,
        #[arg(long, value_delimiter = ',')]
        algebras: Vec<String>,
        #[arg(long)]
        target: String,
        #[arg(long)]
        map: String,
    },
    /// Naturality, unit and multiplication diagrams of a Kleisli law.
    CheckKleisliLaw {
        #[arg(long)]
        law: String,
    },
    /// The same diagrams for an Eilenberg-Moore law along the identity.
    CheckEmLaw {
        #[arg(long)]
        law: String,
    },
    /// Functoriality of the Kleisli lifting induced by a law.
    Lift {
        #[arg(long)]
        law: String,
    },
    /// Classifying object of algebras along a law, with its universal property.
    Classify(ClassifyArgs),
    /// Tensor product of two algebras over a commutative monad.
    Tensor {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "target")]
        targets: Vec<String>,
        #[arg(long)]
        target_max_size: Option<u64>,
    },
    /// Coproduct of two algebras via the coproduct law.
    CoproductLift {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long = "target")]
        targets: Vec<String>,
        #[arg(long)]
        target_max_size: Option<u64>,
    },
    /// Only the universal-property verification of a classifying object.
    VerifyUniversal(ClassifyArgs),
    /// Adjunction between algebra categories induced by a monad morphism.
    /// Sources have carriers up to --max-size + 1.
    AdjointLift {
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        target_max_size: Option<u64>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckMonad { .. } => "check-monad",
            Command::CheckMorphism { .. } => "check-morphism",
            Command::CheckStrength { .. } => "check-strength",
            Command::CheckCommutative { .. } => "check-commutative",
            Command::CheckBimorphism { .. } => "check-bimorphism",
            Command::CheckKleisliLaw { .. } => "check-kleisli-law",
            Command::CheckEmLaw { .. } => "check-em-law",
            Command::Lift { .. } => "lift",
            Command::Classify(_) => "classify",
            Command::Tensor { .. } => "tensor",
            Command::CoproductLift { .. } => "coproduct-lift",
            Command::VerifyUniversal(_) => "verify-universal",
            Command::AdjointLift { .. } => "adjoint-lift",
        }
    }
}
