use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rhiza::Field;

mod commands;

const LONG_ABOUT: &str = "\
Exact computations with rhizaform algebras over Q and Q(i).

Files are JSON documents tagged with `kind` and `field`. Scalars are strings
such as \"3/4\" or \"1/2-1*i\". Tensors use zero-based indices: c[i][j][k] is
the e_k coefficient of e_i·e_j. Matrix files use the column-as-image
convention: column j holds the image of the basis vector e_(j+1).

Reports are JSON on standard output with one-based indices.
Exit codes: 0 property holds or success, 1 property fails, 2 usage or input error.";

#[derive(Parser, Debug)]
#[command(name = "rhiza", version, about = "Exact computations with rhizaform algebras", long_about = LONG_ABOUT)]
pub struct Cli {
    /// Field declared by generated documents (Q or Qi).
    #[arg(long, global = true, env = "RHIZA_FIELD", default_value = "Q")]
    pub field: Field,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write the derived document to this file.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check an identity on an algebra or rhizaform file.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        axiom: Axiom,
    },
    /// Derive the sum, circle or Jacobi-Jordan bracket operation.
    Derive {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: DerivedOp,
        #[arg(long, value_enum, default_value_t = ConventionArg::Plus)]
        convention: ConventionArg,
        #[command(flatten)]
        out: Output,
    },
    /// Bimodule checks.
    #[command(subcommand)]
    Bimodule(BimoduleCommand),
    /// Semidirect product A ⋉ V of a bimodule.
    Semidirect {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// The anti-associative double A ⊕ Â of a rhizaform algebra.
    Double {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// O-operator checks.
    #[command(subcommand)]
    Oop(OopCommand),
    /// Rota-Baxter operator checks and search.
    #[command(subcommand)]
    Rb(RbCommand),
    /// Induce a rhizaform structure.
    #[command(subcommand)]
    Induce(InduceCommand),
    /// Connes cocycle checks.
    #[command(subcommand)]
    Cocycle(CocycleCommand),
    /// Build and verify a double construction of a Connes cocycle.
    DoubleConstruct {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Right, left or full series of a rhizaform algebra.
    Series {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = SeriesArg::Full)]
        kind: SeriesArg,
        /// Largest degree computed; defaults to running until the series stabilizes.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Center of an algebra or rhizaform algebra.
    Center { file: PathBuf },
    /// Whether a subspace is a two-sided ideal.
    Ideal { file: PathBuf, subspace: PathBuf },
    /// Quotient of a rhizaform algebra by its center.
    QuotientCenter {
        file: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Classify rhizaform structures on the 2-dimensional anti-associative algebras.
    Classify2,
    /// Canonical class of a 2-dimensional rhizaform algebra.
    Canon2 { file: PathBuf },
    /// Decide isomorphism of two 2-dimensional rhizaform algebras.
    Iso2 { a: PathBuf, b: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum BimoduleCommand {
    /// Check the bimodule conditions.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum OopCommand {
    /// Check the O-operator identity for a matrix T: V → A.
    Verify { bimodule: PathBuf, t: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum RbCommand {
    /// Check the Rota-Baxter identity (weight zero).
    Verify { algebra: PathBuf, r: PathBuf },
    /// Enumerate Rota-Baxter operators with entries of bounded height.
    Search {
        algebra: PathBuf,
        #[arg(long)]
        height: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum InduceCommand {
    /// From a Rota-Baxter operator on an anti-associative algebra.
    Rb {
        algebra: PathBuf,
        r: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// From an O-operator on a bimodule.
    Oop {
        bimodule: PathBuf,
        t: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// From a nondegenerate Connes cocycle.
    Cocycle {
        algebra: PathBuf,
        form: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand, Debug)]
pub enum CocycleCommand {
    /// Check the Connes cocycle condition.
    Check { algebra: PathBuf, form: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axiom {
    AntiAssoc,
    JacobiJordan,
    PreJj,
    Rhizaform,
    Admissible,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedOp {
    Sum,
    Circ,
    Bracket,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConventionArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesArg {
    Left,
    Right,
    Full,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, code) = commands::run(&cli, &argv);
    print!("{text}");
    ExitCode::from(code)
}

#[cfg(test)]
mod tests {
    use clap::CommandFactory;

    use super::*;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_nested_subcommands() {
        let cli = Cli::try_parse_from(["rhiza", "induce", "cocycle", "a.json", "b.json", "-o", "out.json"]).unwrap();
        match cli.command {
            Command::Induce(InduceCommand::Cocycle { out, .. }) => {
                assert_eq!(out.output, Some(PathBuf::from("out.json")));
            }
            other => panic!("{other:?}"),
        }
        let cli = Cli::try_parse_from(["rhiza", "--field", "Qi", "classify2"]).unwrap();
        assert_eq!(cli.field, Field::Qi);
    }

    #[test]
    fn rejects_unknown_values() {
        assert!(Cli::try_parse_from(["rhiza", "check", "a.json", "--axiom=associative"]).is_err());
        assert!(Cli::try_parse_from(["rhiza", "series", "a.json", "--kind=upper"]).is_err());
        assert!(Cli::try_parse_from(["rhiza", "--field", "R", "classify2"]).is_err());
    }
}
