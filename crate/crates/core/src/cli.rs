//! Command-line front end. Every subcommand renders a line-oriented report
//! in which rationals are printed as exact `p/q`.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;

use crate::convergence::{cut_norm, sample, semicontinuity_experiment, Family, Parameter};
use crate::densities::{ckp_profile, density, induced_density};
use crate::error::{Error, Result};
use crate::fractional::{
    check_complementary_slackness, check_weak_duality, fekete_profile, fractional_chromatic, fractional_clique,
};
use crate::graph::FiniteGraph;
use crate::graphon::{BlockSet, StepGraphon};
use crate::integral::{chromatic_number, clique_number, independence_number};
use crate::io::{parse_graph, parse_graphon, write_graph};
use crate::perfection::{default_hole_bound, inheritance_perfect, subgraph_perfect_up_to, HoleKind};
use crate::polyton::{check_conditions, membership, BlockPoint, Membership};
use crate::rational::{fmt_decimal, fmt_extended, fmt_fraction, parse_rational, ExtendedRational, Rational};

#[derive(Debug, Parser)]
#[command(name = "stepgraphon", version, about = "Exact parameters of step graphons")]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Yn,
    Truncate,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParamArg {
    Alpha,
    Chi,
    Omega,
    Omegafrac,
}

impl From<ParamArg> for Parameter {
    fn from(p: ParamArg) -> Self {
        match p {
            ParamArg::Alpha => Parameter::Alpha,
            ParamArg::Chi => Parameter::Chi,
            ParamArg::Omega => Parameter::Omega,
            ParamArg::Omegafrac => Parameter::OmegaFrac,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Independence, chromatic, clique and fractional numbers.
    Analyze {
        #[arg(long)]
        graphon: PathBuf,
    },
    /// Homomorphism or induced density of a pattern graph.
    Density {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long)]
        induced: bool,
    },
    /// Edgeless-pattern densities and brackets of their k-th roots.
    Ckp {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long)]
        kmax: usize,
    },
    /// Optimal fractional colouring and clique with duality checks.
    Duality {
        #[arg(long)]
        graphon: PathBuf,
    },
    /// b-fold chromatic numbers for b = 1..=bmax.
    Bfold {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long)]
        bmax: usize,
    },
    /// Pointwise conditions and hull membership of a block-constant point.
    Polyton {
        #[arg(long)]
        graphon: PathBuf,
        /// Comma-separated coordinates, one per block.
        #[arg(long)]
        point: String,
    },
    /// Bounded subgraph-perfectness and inheritance-perfectness.
    Perfect {
        #[arg(long)]
        graphon: PathBuf,
        /// Largest odd hole length searched; defaults to 2m + 1.
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Cut norm of the difference of two graphons.
    Cutnorm {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Draw a W-random graph.
    Sample {
        #[arg(long)]
        graphon: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Graph file to write; the graph is printed when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parameter values along a convergent sequence.
    Converge {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        graphon: Option<PathBuf>,
        #[arg(long, value_enum)]
        param: ParamArg,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
}

/// Exit status for a failed run: 1 for internal consistency failures, 2 for
/// everything caused by the input.
pub fn exit_code(error: &Error) -> i32 {
    match error {
        Error::Invariant(_) | Error::PivotLimit(_) | Error::SearchCeiling { .. } => 1,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_graphon(path: &Path) -> Result<StepGraphon> {
    parse_graphon(&read(path)?)
}

fn load_graph(path: &Path) -> Result<FiniteGraph> {
    parse_graph(&read(path)?)
}

fn fmt_sets<'a>(entries: impl IntoIterator<Item = (&'a BlockSet, &'a Rational)>) -> String {
    entries
        .into_iter()
        .map(|(s, c)| format!("{s}:{}", fmt_fraction(c)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_values(values: &[Rational]) -> String {
    values.iter().map(fmt_fraction).collect::<Vec<_>>().join(" ")
}

/// All parameters of one graphon, after checking the relations between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Analysis {
    pub alpha: Rational,
    pub alpha_witness: BlockSet,
    pub chi: ExtendedRational,
    pub colouring: Option<Vec<usize>>,
    pub omega: ExtendedRational,
    pub omega_witness: BlockSet,
    pub chi_frac: ExtendedRational,
    pub omega_frac: ExtendedRational,
}

/// Computes every parameter and verifies
/// `omega <= omega_frac <= chi_frac <= chi`, that `chi_frac` and `chi` are
/// finite together, and `alpha * omega_frac >= 1`, `alpha * chi >= 1`
/// whenever the factors are finite.
pub fn analyze(w: &StepGraphon) -> Result<Analysis> {
    let a = independence_number(w)?;
    let chi = chromatic_number(w)?;
    let omega = clique_number(w)?;
    let chi_frac = fractional_chromatic(w)?.value;
    let omega_frac = fractional_clique(w)?.value;
    let chain = [
        ("omega", &omega.value),
        ("omega_frac", &omega_frac),
        ("chi_frac", &chi_frac),
        ("chi", &chi.value),
    ];
    for pair in chain.windows(2) {
        if pair[0].1 > pair[1].1 {
            return Err(Error::Invariant(format!(
                "{} = {} exceeds {} = {}",
                pair[0].0, pair[0].1, pair[1].0, pair[1].1
            )));
        }
    }
    if chi_frac.is_finite() != chi.value.is_finite() {
        return Err(Error::Invariant(format!("chi_frac = {chi_frac} but chi = {}", chi.value)));
    }
    for (name, value) in [("omega_frac", &omega_frac), ("chi", &chi.value)] {
        if let Some(v) = value.as_finite() {
            if &a.value * v < Rational::one() {
                return Err(Error::Invariant(format!("alpha * {name} = {} < 1", &a.value * v)));
            }
        }
    }
    Ok(Analysis {
        alpha: a.value,
        alpha_witness: a.witness,
        chi: chi.value,
        colouring: chi.colouring,
        omega: omega.value,
        omega_witness: omega.witness,
        chi_frac,
        omega_frac,
    })
}

fn parse_point(text: &str) -> Result<BlockPoint> {
    let mut coords = Vec::new();
    let mut column = 1;
    for part in text.split(',') {
        let value = parse_rational(part).ok_or_else(|| Error::Parse {
            line: 1,
            column,
            message: format!("invalid rational `{}`", part.trim()),
        })?;
        coords.push(value);
        column += part.len() + 1;
    }
    Ok(BlockPoint(coords))
}

/// Runs one subcommand and returns its report.
pub fn execute(command: &Command) -> Result<String> {
    let mut out = String::new();
    match command {
        Command::Analyze { graphon } => {
            let w = load_graphon(graphon)?;
            let a = analyze(&w)?;
            let _ = writeln!(out, "blocks {}", w.blocks());
            let _ = writeln!(out, "alpha {} witness {}", fmt_fraction(&a.alpha), a.alpha_witness);
            match &a.colouring {
                Some(c) => {
                    let colours: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "chi {} colouring {}", a.chi, colours.join(" "));
                }
                None => {
                    let _ = writeln!(out, "chi inf");
                }
            }
            let _ = writeln!(out, "omega {} witness {}", a.omega, a.omega_witness);
            let _ = writeln!(out, "chi_frac {}", fmt_extended(&a.chi_frac));
            let _ = writeln!(out, "omega_frac {}", fmt_extended(&a.omega_frac));
        }
        Command::Density {
            pattern,
            graphon,
            induced,
        } => {
            let h = load_graph(pattern)?;
            let w = load_graphon(graphon)?;
            let (label, value) = if *induced {
                ("induced_density", induced_density(&h, &w)?)
            } else {
                ("density", density(&h, &w)?)
            };
            let _ = writeln!(out, "{label} {}", fmt_fraction(&value));
        }
        Command::Ckp { graphon, kmax } => {
            let w = load_graphon(graphon)?;
            let alpha = independence_number(&w)?.value;
            let _ = writeln!(out, "alpha {}", fmt_fraction(&alpha));
            for row in ckp_profile(&w, *kmax)? {
                let _ = writeln!(
                    out,
                    "k {} a_k {} root_bracket {} {} approx {} {}",
                    row.k,
                    fmt_fraction(&row.a_k),
                    fmt_fraction(&row.lower),
                    fmt_fraction(&row.upper),
                    fmt_decimal(&row.lower, 6),
                    fmt_decimal(&row.upper, 6)
                );
            }
        }
        Command::Duality { graphon } => {
            let w = load_graphon(graphon)?;
            let chi = fractional_chromatic(&w)?;
            let omega = fractional_clique(&w)?;
            let _ = writeln!(out, "chi_frac {}", fmt_extended(&chi.value));
            let _ = writeln!(out, "omega_frac {}", fmt_extended(&omega.value));
            match (&chi.coloring, &omega.clique) {
                (Some(c), Some(f)) => {
                    let gap = check_weak_duality(f, c, &w)?.gap;
                    let slack = check_complementary_slackness(f, c, &w)?;
                    let _ = writeln!(out, "gap {}", fmt_fraction(&gap));
                    let _ = writeln!(out, "colouring {}", fmt_sets(&c.weights));
                    let _ = writeln!(out, "clique {}", fmt_values(&f.block_values));
                    let _ = writeln!(
                        out,
                        "slackness {}",
                        if slack.holds() { "holds" } else { "fails" }
                    );
                }
                _ => {
                    let _ = writeln!(out, "gap undefined");
                }
            }
        }
        Command::Bfold { graphon, bmax } => {
            let w = load_graphon(graphon)?;
            let _ = writeln!(out, "chi_frac {}", fmt_extended(&fractional_chromatic(&w)?.value));
            let _ = writeln!(out, "b chi_b ratio");
            for row in fekete_profile(&w, *bmax)? {
                let _ = writeln!(out, "{} {} {}", row.b, row.chi_b, fmt_fraction(&row.ratio));
            }
        }
        Command::Polyton { graphon, point } => {
            let w = load_graphon(graphon)?;
            let x = parse_point(point)?;
            match check_conditions(&x, &w)? {
                None => {
                    let _ = writeln!(out, "conditions PASS");
                }
                Some(v) => {
                    let _ = writeln!(out, "conditions FAIL {v}");
                }
            }
            match membership(&x, &w)? {
                Membership::Member { combination } => {
                    let _ = writeln!(out, "membership MEMBER");
                    let _ = writeln!(out, "combination {}", fmt_sets(combination.iter().map(|(s, l)| (s, l))));
                }
                Membership::NonMember { weights, threshold } => {
                    let _ = writeln!(out, "membership NON-MEMBER");
                    let _ = writeln!(out, "weights {}", fmt_values(&weights));
                    let _ = writeln!(out, "threshold {}", fmt_fraction(&threshold));
                }
            }
        }
        Command::Perfect { graphon, upto } => {
            let w = load_graphon(graphon)?;
            let upto = upto.unwrap_or_else(|| default_hole_bound(&w));
            let sub = subgraph_perfect_up_to(&w, upto)?;
            match &sub.witness {
                None => {
                    let _ = writeln!(out, "subgraph-perfect(<={upto}) YES");
                }
                Some(h) => {
                    let name = match h.kind {
                        HoleKind::Hole => format!("C{}", h.length),
                        HoleKind::Antihole => format!("co-C{}", h.length),
                    };
                    let _ = writeln!(out, "subgraph-perfect(<={upto}) NO witness {name} {}", h.assignment);
                }
            }
            let inh = inheritance_perfect(&w)?;
            match &inh.witness {
                None => {
                    let _ = writeln!(out, "inheritance-perfect YES");
                }
                Some(x) => {
                    let _ = writeln!(
                        out,
                        "inheritance-perfect NO witness {} chi {} omega {}",
                        x.blocks, x.chromatic, x.clique
                    );
                }
            }
        }
        Command::Cutnorm { a, b } => {
            let r = cut_norm(&load_graphon(a)?, &load_graphon(b)?)?;
            let _ = writeln!(out, "cut_norm {}", fmt_fraction(&r.value));
            let _ = writeln!(out, "S {}", r.witness_s);
            let _ = writeln!(out, "T {}", r.witness_t);
            let _ = writeln!(out, "refinement {}", fmt_values(r.refinement.measures()));
        }
        Command::Sample {
            graphon,
            n,
            seed,
            out: path,
        } => {
            let w = load_graphon(graphon)?;
            let s = sample(&w, *n, *seed)?;
            let text = write_graph(&s.graph);
            match path {
                Some(p) => {
                    write(p, &text)?;
                    let coords: Vec<String> = s.coordinates.iter().map(|c| c.to_string()).collect();
                    let _ = writeln!(out, "vertices {} edges {} seed {}", s.n, s.graph.edge_count(), s.seed);
                    let _ = writeln!(out, "coordinates {}", coords.join(" "));
                }
                None => out.push_str(&text),
            }
        }
        Command::Converge {
            family,
            graphon,
            param,
            steps,
            seed,
        } => {
            let need_graphon = || -> Result<StepGraphon> {
                let path = graphon
                    .as_ref()
                    .ok_or_else(|| Error::InvalidArgument("this family needs --graphon".into()))?;
                load_graphon(path)
            };
            let family = match family {
                FamilyArg::Yn => Family::ConstantReciprocal,
                FamilyArg::Truncate => Family::Truncation(need_graphon()?),
                FamilyArg::Sample => {
                    let seed = seed.ok_or_else(|| Error::InvalidArgument("the sample family needs --seed".into()))?;
                    Family::Sample {
                        graphon: need_graphon()?,
                        seed,
                    }
                }
            };
            let parameter = Parameter::from(*param);
            let report = semicontinuity_experiment(&family, parameter, *steps)?;
            let _ = writeln!(out, "family,parameter,limit");
            let _ = writeln!(
                out,
                "{},{},{}",
                report.family,
                parameter.name(),
                fmt_extended(&report.limit_value)
            );
            let _ = writeln!(out, "n,value,cut_norm,overlay");
            for row in &report.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    row.n,
                    fmt_extended(&row.value),
                    fmt_fraction(&row.cut_norm),
                    if row.aligned { "aligned" } else { "overlay not optimized" }
                );
            }
            let _ = writeln!(
                out,
                "inequality limit {} last: {}",
                parameter.relation(),
                if report.holds { "holds" } else { "violated" }
            );
        }
    }
    Ok(out)
}

/// Parses arguments, runs, prints, and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let result = execute(&cli.command).and_then(|report| match &cli.output {
        Some(path) => write(path, &report),
        None => {
            print!("{report}");
            Ok(())
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::FiniteGraph;
    use crate::graphon::representation_of;
    use crate::rational::int;
    use num_traits::Zero;

    #[test]
    fn zero_graphon_analysis() {
        let a = analyze(&StepGraphon::constant(int(0)).unwrap()).unwrap();
        assert_eq!(a.alpha, int(1));
        let one = ExtendedRational::from_usize(1);
        assert_eq!([&a.chi, &a.omega, &a.chi_frac, &a.omega_frac], [&one; 4]);
    }

    #[test]
    fn point_parsing_reports_columns() {
        assert_eq!(parse_point("1/2, 0,1").unwrap().0.len(), 3);
        match parse_point("1/2,x") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Invariant("x".into())), 1);
        assert_eq!(exit_code(&Error::EmptyRestriction), 2);
        assert_eq!(run(["stepgraphon", "analyze"]), 2);
    }

    #[test]
    fn analysis_of_c5() {
        let a = analyze(&representation_of(&FiniteGraph::cycle(5).unwrap()).unwrap()).unwrap();
        assert_eq!(a.chi_frac, a.omega_frac);
        assert_eq!(a.chi, ExtendedRational::from_usize(3));
        assert!(!a.alpha.is_zero());
    }
}
