use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "xorgap", version, about = "Tensor norms, GPT base norms and XOR-game biases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Cap on worker threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct Input {
    /// Read the input model from a file.
    #[arg(long = "in", value_name = "PATH", conflicts_with = "inline")]
    pub path: Option<PathBuf>,

    /// Input model as a JSON string.
    #[arg(long, value_name = "JSON")]
    pub inline: Option<String>,
}

impl Input {
    pub fn is_given(&self) -> bool {
        self.path.is_some() || self.inline.is_some()
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Norm of a vector in a space, or base/order-unit norm in a GPT.
    Norm {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = NormOp::Norm)]
        op: NormOp,
    },
    /// Injective or projective norm of a tensor, or their ratio.
    Tensor {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        op: TensorOp,
    },
    /// Search a space pair for tensors with a large projective/injective ratio.
    RhoSearch {
        #[command(flatten)]
        input: Input,
        /// Number of candidate tensors evaluated.
        #[arg(long, default_value_t = 50)]
        samples: usize,
    },
    /// Local and global biases of an XOR game.
    Game {
        #[command(flatten)]
        input: Input,
    },
    /// Explicit witness constructions.
    Witness {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        op: WitnessOp,
    },
    /// Monte Carlo experiments.
    Mc {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        op: McOp,
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Run a built-in check suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::PaperConstants)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormOp {
    /// Norm of `vector` in `space`.
    Norm,
    /// Dual norm of `vector` as a functional on `space`.
    Dual,
    /// Base norm of `vector` in `gpt`.
    Base,
    /// Order-unit norm of the functional `vector` on `gpt`.
    OrderUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TensorOp {
    Injective,
    Projective,
    Ratio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessOp {
    Chsh19,
    Auerbach,
    Convexity,
    ProjectionConstant,
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum McOp {
    GueOpnorm,
    GueTracenorm,
    Chevet,
    EllNorm,
    QuantumRatio,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    PaperConstants,
}
