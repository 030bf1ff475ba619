//! Dispatch of parsed commands to the library, and output formatting.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;

use liecograph::functors::{
    build_e, check_duality, harrison_shuffle_model, homology_by_degree, homotopy_spectral_sequence, parse_dgca,
    parse_dgcc, rational_homotopy, DgcaPresentation, DualityViolation, FormatError, FunctorError, Truncation,
};
use liecograph::graphcoalg::{cobracket, is_zero_in_e, EBasis, GraphCoalgError, ZeroTest};
use liecograph::labels::{GeneratorTable, LabelError};
use liecograph::liealg::{lie_normal_form, LieBasis, LieError};
use liecograph::pairing::{element_pair, GeneratorPairing};
use liecograph::rational::Rational;
use liecograph::shapes::{enumerate_graphs, enumerate_trees, ShapeError};

use crate::expr::{identifiers, parse_graph, parse_labels, parse_tree, ParseError};
use crate::{Cli, Command, Enumerable};

pub const CAP_OVERRIDE_VAR: &str = "LIECOGRAPH_CAP_OVERRIDE";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Functor(#[from] FunctorError),
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Graph(#[from] GraphCoalgError),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("models disagree: {0}")]
    Oracle(String),
}

impl CliError {
    fn cap_too_small(&self) -> bool {
        matches!(
            self,
            CliError::Functor(FunctorError::CapTooSmall { .. })
                | CliError::Format(FormatError::Invalid(FunctorError::CapTooSmall { .. }))
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            _ if self.cap_too_small() => "cap",
            CliError::Parse(ParseError::UnknownGenerator { .. }) => "unknown-generator",
            CliError::Parse(ParseError::ArityMismatch { .. }) => "arity",
            CliError::Parse(_) | CliError::Format(FormatError::Syntax { .. }) => "parse",
            CliError::Io { .. } => "io",
            CliError::Oracle(_) => "oracle",
            _ => "input",
        }
    }

    pub fn exit_code(&self) -> u8 {
        if self.cap_too_small() {
            2
        } else {
            1
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Generators from `--table` and `--gen`; without either, every name in the
/// expressions is declared with degree 2, in sorted order.
fn generator_table(cli: &Cli, texts: &[&str]) -> Result<GeneratorTable, CliError> {
    let mut table = GeneratorTable::new();
    if let Some(path) = &cli.table {
        for g in parse_dgca(&read(path)?)?.generators() {
            table.add(&g.name, g.degree)?;
        }
    }
    for spec in &cli.gens {
        let (name, degree) = spec
            .split_once(':')
            .and_then(|(n, d)| Some((n.trim(), d.trim().parse::<i32>().ok()?)))
            .ok_or_else(|| CliError::Input(format!("bad generator `{spec}`; expected NAME:DEG")))?;
        table.add(name, degree)?;
    }
    if cli.table.is_none() && cli.gens.is_empty() {
        let mut names: Vec<String> = texts.iter().flat_map(|t| identifiers(t)).collect();
        names.sort();
        names.dedup();
        for n in names {
            table.add(&n, 2)?;
        }
    }
    Ok(table)
}

/// File caps, then `LIECOGRAPH_CAP_OVERRIDE=<weight>,<degree>`, then flags.
fn truncation(cli: &Cli, file: Truncation) -> Result<Truncation, CliError> {
    let mut t = file;
    if let Ok(v) = std::env::var(CAP_OVERRIDE_VAR) {
        let bad = || CliError::Input(format!("{CAP_OVERRIDE_VAR}=`{v}`; expected <weight>,<degree>"));
        let (w, d) = v.split_once(',').ok_or_else(bad)?;
        t = Truncation::new(w.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?);
    }
    if let Some(w) = cli.cap_weight {
        t.max_weight = w;
    }
    if let Some(d) = cli.cap_degree {
        t.max_degree = d;
    }
    Ok(t)
}

fn load_algebra(cli: &Cli, path: &Path) -> Result<DgcaPresentation, CliError> {
    let a = parse_dgca(&read(path)?)?;
    let t = truncation(cli, a.truncation())?;
    Ok(if t == a.truncation() { a } else { a.with_truncation(t) })
}

fn header(out: &mut String, t: Truncation) {
    let _ = writeln!(out, "# caps weight {} degree {}", t.max_weight, t.max_degree);
}

fn terms_table<K>(out: &mut String, terms: impl Iterator<Item = (K, Rational)>, show: impl Fn(&K) -> String) {
    let before = out.len();
    for (k, c) in terms {
        let _ = writeln!(out, "{c}\t{}", show(&k));
    }
    if out.len() == before {
        out.push_str("0\n");
    }
}

fn dims_table(out: &mut String, dims: &BTreeMap<i32, usize>) {
    for (d, n) in dims {
        let _ = writeln!(out, "{d}\t{n}");
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    let mut out = String::new();
    match &cli.command {
        Command::Pair { graph, tree } => {
            let table = generator_table(cli, &[graph, tree])?;
            let g = parse_graph(graph, &table)?;
            let t = parse_tree(tree, &table)?;
            let _ = writeln!(out, "{}", element_pair(&g, &t, &GeneratorPairing::Kronecker));
        }
        Command::Cobracket { expr } => {
            let table = generator_table(cli, &[expr])?;
            let g = parse_graph(expr, &table)?;
            terms_table(&mut out, cobracket(&g).into_terms(), |pair| {
                format!("{}\t{}", pair[0].display(&table), pair[1].display(&table))
            });
        }
        Command::Normalize { expr } => {
            let table = generator_table(cli, &[expr])?;
            let g = parse_graph(expr, &table)?;
            let coords = EBasis::new().coordinates(&g)?;
            terms_table(&mut out, coords.into_terms(), |w| w.display(&table));
        }
        Command::Iszero { expr } => {
            let table = generator_table(cli, &[expr])?;
            match is_zero_in_e(&parse_graph(expr, &table)?) {
                ZeroTest::Zero => out.push_str("zero\n"),
                ZeroTest::NonZero { tensor, coefficient } => {
                    let factors: Vec<String> = tensor.iter().map(|t| t.display(&table)).collect();
                    let _ = writeln!(out, "nonzero\t{coefficient}\t{}", factors.join("\t"));
                }
            }
        }
        Command::LieNormalize { expr } => {
            let table = generator_table(cli, &[expr])?;
            let nf = lie_normal_form(&parse_tree(expr, &table)?)?;
            terms_table(&mut out, nf.into_terms(), |w| w.to_tree().to_bracket_string(&table));
        }
        Command::Harrison { file, window, oracle } => {
            let a = load_algebra(cli, file)?;
            header(&mut out, a.truncation());
            let h = harrison_shuffle_model(&a)?;
            let (lo, hi) = match window {
                Some(w) => (*w.start(), *w.end()),
                None => (1, h.complex.caps().complete_through - 1),
            };
            let dims = homology_by_degree(&h, lo, hi)?;
            if *oracle {
                let e = homology_by_degree(&build_e(&a)?, lo, hi)?;
                if e != dims {
                    return Err(CliError::Oracle(format!("Harrison {dims:?}, graphs {e:?}")));
                }
                out.push_str("# oracle: graph model agrees\n");
            }
            dims_table(&mut out, &dims);
        }
        Command::Pi { file, window, oracle } => {
            let a = load_algebra(cli, file)?;
            header(&mut out, a.truncation());
            let (lo, hi) = match window {
                Some(w) => (*w.start(), *w.end()),
                None => (2, build_e(&a)?.complex.caps().complete_through),
            };
            let pi = rational_homotopy(&a, lo, hi)?;
            if *oracle {
                let h = homology_by_degree(&harrison_shuffle_model(&a)?, lo - 1, hi - 1)?;
                let shifted: BTreeMap<i32, usize> = h.into_iter().map(|(d, n)| (d + 1, n)).collect();
                if shifted != pi {
                    return Err(CliError::Oracle(format!("graphs {pi:?}, Harrison {shifted:?}")));
                }
                out.push_str("# oracle: Harrison complex agrees\n");
            }
            dims_table(&mut out, &pi);
        }
        Command::Ss { file, pages } => {
            let a = load_algebra(cli, file)?;
            header(&mut out, a.truncation());
            let ss = homotopy_spectral_sequence(&a, *pages)?;
            let _ = writeln!(out, "# page\tweight\tdegree\tdim, through degree {}", ss.complete_through);
            for (r, page) in ss.pages.iter().enumerate() {
                for (b, n) in page.iter().filter(|(_, n)| **n > 0) {
                    let _ = writeln!(out, "{r}\t{}\t{}\t{n}", b.weight, b.degree);
                }
            }
        }
        Command::DualCheck { algebra, coalgebra } => {
            let a = load_algebra(cli, algebra)?;
            let (c, _) = parse_dgcc(&read(coalgebra)?)?;
            header(&mut out, a.truncation());
            let report = check_duality(&a, &c)?;
            for (b, n) in &report.invertible {
                let _ = writeln!(out, "pairing\t{}\t{}\t{n}", b.weight, b.degree);
            }
            for ((part, b), s) in &report.signs {
                let _ = writeln!(out, "sign\t{}\t{}\t{}\t{s}", format!("{part:?}").to_lowercase(), b.weight, b.degree);
            }
            let table = GeneratorTable::from_pairs(c.basis().iter().map(|b| (b.name.as_str(), b.degree - 1)))?;
            for v in &report.violations {
                let line = match v {
                    DualityViolation::Degenerate { at, e_dim, l_dim, rank } => {
                        format!("degenerate\t{}\t{}\t{e_dim}\t{l_dim}\t{rank}", at.weight, at.degree)
                    }
                    DualityViolation::NotAdjoint { part, source, x, y } => format!(
                        "not-adjoint\t{}\t{}\t{}\t{}\t{}",
                        format!("{part:?}").to_lowercase(),
                        source.weight,
                        source.degree,
                        x.display(&table),
                        y.to_tree().to_bracket_string(&table)
                    ),
                };
                let _ = writeln!(out, "{line}");
            }
            out.push_str(if report.passes() { "pass\n" } else { "fail\n" });
        }
        Command::Enumerate { what, arg } => match what {
            Enumerable::Graphs | Enumerable::Trees => {
                let n: usize = arg.trim().parse().map_err(|_| CliError::Input(format!("bad weight `{arg}`")))?;
                let lines: Vec<String> = match what {
                    Enumerable::Graphs => enumerate_graphs(n)?.iter().map(|g| g.to_string()).collect(),
                    _ => enumerate_trees(n)?.iter().map(|t| t.to_string()).collect(),
                };
                for l in lines {
                    let _ = writeln!(out, "{l}");
                }
            }
            Enumerable::Bar | Enumerable::Lie => {
                let table = generator_table(cli, &[arg])?;
                let labels = parse_labels(arg, &table)?;
                let lines: Vec<String> = match what {
                    Enumerable::Bar => EBasis::new().basis(&labels)?.iter().map(|w| w.display(&table)).collect(),
                    _ => LieBasis::new()
                        .basis(&labels)?
                        .iter()
                        .map(|w| w.to_tree().to_bracket_string(&table))
                        .collect(),
                };
                for l in lines {
                    let _ = writeln!(out, "{l}");
                }
            }
        },
    }
    Ok(out)
}
