//! Command-line front end: argument definitions, category contexts and the
//! verbs. `run` turns a parsed command line into a [`Report`] whose exit
//! code depends only on its content.

pub mod dsl;

mod commands;
mod context;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

pub use commands::run;
pub use context::Context;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A computation ran but a requested identity does not hold.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) | CliError::Parse(_) => 2,
        }
    }
}

/// What a verb produced: a human-readable rendering, the same content as a
/// JSON value, and whether every requested check held.
#[derive(Debug, Clone)]
pub struct Report {
    pub ok: bool,
    pub text: String,
    pub json: serde_json::Value,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.ok {
            0
        } else {
            1
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("report values serialize"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dgrams", version, about = "Exact diagram calculus for representation graphs")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Extra directory searched for graph and group files.
    #[arg(long, global = true, value_name = "DIR")]
    pub data_path: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

/// The category an expression is read in.
#[derive(Debug, Clone, Default, Args)]
pub struct CategoryArgs {
    /// `C_n^irr`, evaluated on the characters of `C_n`.
    #[arg(long, value_name = "N", conflicts_with_all = ["group", "star"])]
    pub cn: Option<u32>,
    /// Module data: a bundled name (t_binary_tetrahedral, cN, cN_natural,
    /// su2_N) or a group file.
    #[arg(long, value_name = "NAME")]
    pub group: Option<String>,
    /// Representation graph: a bundled name or a graph file. Defaults to the
    /// graph of the group's defining module.
    #[arg(long, value_name = "NAME")]
    pub graph: Option<String>,
    /// Allow the star object and its projection and inclusion cells.
    #[arg(long)]
    pub star: bool,
}

/// A diagram expression, inline or from a file.
#[derive(Debug, Clone, Args)]
pub struct ExprArgs {
    #[arg(value_name = "EXPR", required_unless_present = "file")]
    pub expr: Option<String>,
    #[arg(long, value_name = "PATH", conflicts_with = "expr")]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the representation graph of a module and print it as a graph file.
    GraphBuild {
        #[arg(long, value_name = "NAME")]
        group: String,
        /// Label of the generating module; defaults to the defining module.
        #[arg(long, value_name = "LABEL")]
        module: Option<String>,
    },
    /// Check the dimension identity at every node of a graph.
    GraphCheck {
        #[arg(long, value_name = "NAME")]
        graph: String,
    },
    /// List the walks of a given length between two nodes.
    Paths {
        #[arg(long, value_name = "NAME")]
        graph: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        len: usize,
    },
    /// Dimension of a hom space between two object words.
    Homdim {
        #[command(flatten)]
        category: CategoryArgs,
        /// Comma-separated labels; empty for the unit word.
        #[arg(long, allow_hyphen_values = true)]
        source: String,
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Rewrite an expression in `C_n^irr` to its normal form.
    Normalize {
        #[arg(long, value_name = "N")]
        cn: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Evaluate an expression to an exact matrix.
    Eval {
        #[command(flatten)]
        category: CategoryArgs,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Verify the defining relations of a category on its evaluation.
    CheckRelations {
        #[command(flatten)]
        category: CategoryArgs,
    },
    /// Evaluate a morphism between simples and report its scalar.
    Schur {
        #[command(flatten)]
        category: CategoryArgs,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Count (or list) the planar diagrams `k -> l`.
    TlDim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        list: bool,
        /// Also compare the matrix rank with the dimension of intertwiners.
        #[arg(long)]
        rank: bool,
    },
    /// Compose planar diagrams, top first: `F G` is `F` stacked on `G`.
    TlCompose {
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value_t = 1)]
        conductor: u32,
        #[arg(value_name = "DIAGRAM", required = true, num_args = 1..)]
        diagrams: Vec<String>,
    },
    /// Verify the generator relations of the planar algebra on `k` strands.
    TlCheck {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "2", allow_hyphen_values = true)]
        delta: String,
        #[arg(long, default_value_t = 1)]
        conductor: u32,
        #[arg(long, hide = true, allow_hyphen_values = true)]
        loop_value: Option<String>,
    },
}

/// Parses `args`, runs the command and returns the rendered output with its
/// exit code.
pub fn main_with<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.render().to_string(), code);
        }
    };
    if let Some(dir) = &cli.data_path {
        std::env::set_var(dgrams_core::repgraph::DATA_PATH_ENV, dir);
    }
    match run(&cli.command) {
        Ok(report) => (report.render(cli.format), report.exit_code()),
        Err(e) => {
            let text = match cli.format {
                Format::Text => format!("error: {e}"),
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({
                    "ok": false,
                    "error": e.to_string(),
                    "exit_code": e.exit_code(),
                }))
                .expect("error values serialize"),
            };
            (text, e.exit_code())
        }
    }
}
