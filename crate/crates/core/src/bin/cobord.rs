use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cobord::abelian::{abelian_invariants, smith_normal_form, AbelianInvariants};
use cobord::builders::{mapping_torus, surgery_group, twist_spun_trefoil, wirtinger, FramedLinkDiagram};
use cobord::claims::{run_claims, Context, Expectations};
use cobord::coset::{enumerate, group_order, Enumeration, EnumerationLimits, GroupOrder, Strategy};
use cobord::matrix::IntegerMatrix;
use cobord::parse::{parse_presentation, parse_word};
use cobord::presentation::Presentation;
use cobord::words::Word;

#[derive(Parser)]
#[command(name = "cobord", version, about = "Finitely presented groups: enumeration, invariants and claim checks")]
struct Cli {
    /// Coset limit for every enumeration.
    #[arg(long, global = true, env = "COBORD_MAX_COSETS", default_value_t = 1_000_000)]
    max_cosets: usize,
    #[arg(long, global = true, default_value = "hlt")]
    strategy: Strategy,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a presentation and print it in normal form.
    Parse {
        /// Presentation text, a file path, or `-` for stdin.
        presentation: String,
        #[arg(long)]
        simplify: bool,
    },
    /// Order of a group, or index of a subgroup.
    Order {
        presentation: String,
        #[arg(long = "subgroup")]
        subgroup: Vec<String>,
        /// Write the coset table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Abelian invariants of a presentation or of an integer matrix's cokernel.
    Abelianize {
        presentation: Option<String>,
        /// Rows separated by `;`, e.g. "-1 1 1; 1 -1 1; 1 1 -1".
        #[arg(long, conflicts_with = "presentation", allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Order of the quotient by extra relators.
    Quotient {
        presentation: String,
        #[arg(long = "relator", required = true)]
        relator: Vec<String>,
    },
    /// Mapping torus of an automorphism given on generators.
    MappingTorus {
        fiber: String,
        /// `g=word`, one per fiber generator.
        #[arg(long = "map", required = true)]
        map: Vec<String>,
    },
    /// The group G_n = <t, a | t^n = a^n, ata = tat>.
    TwistSpun {
        #[arg(short = 'n')]
        n: i64,
        /// Also report the order of G_n / <<t^m>>.
        #[arg(long)]
        quotient: Option<i64>,
    },
    /// Fundamental group of integral surgery on a diagram file.
    Surgery {
        #[arg(long)]
        diagram: PathBuf,
        /// Print only the link group.
        #[arg(long)]
        wirtinger: bool,
    },
    /// Run the claim registry.
    VerifyPaper {
        /// Comma-separated claim ids.
        #[arg(long, value_delimiter = ',')]
        claims: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Expectations file to compare recorded claims against.
        #[arg(long)]
        expectations: Option<PathBuf>,
        /// Write the computed values of recorded claims to this file.
        #[arg(long)]
        record: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read_presentation(arg: &str) -> Result<Presentation> {
    let text = if arg == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else if arg.trim_start().starts_with(['<', '⟨']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    Ok(parse_presentation(&text)?)
}

fn words(p: &Presentation, texts: &[String]) -> Result<Vec<Word>> {
    texts.iter().map(|t| Ok(parse_word(t, Some(p.generators()))?)).collect()
}

/// Print an order; limits hit map to exit code 3.
fn report_order(label: &str, o: &GroupOrder) -> u8 {
    println!("{label}: {o}");
    match o {
        GroupOrder::Finite(_) => 0,
        GroupOrder::Unknown(_) => 3,
    }
}

fn run(cli: Cli) -> Result<u8> {
    let limits = EnumerationLimits::default().with_max_cosets(cli.max_cosets).with_strategy(cli.strategy);
    match cli.command {
        Command::Parse { presentation, simplify } => {
            let p = read_presentation(&presentation)?;
            if simplify {
                let s = p.simplify(1000);
                println!("{}", s.presentation);
                for (g, w) in &s.eliminations {
                    println!("  {g} = {w}");
                }
            } else {
                println!("{p}");
            }
            Ok(0)
        }
        Command::Order { presentation, subgroup, csv } => {
            let p = read_presentation(&presentation)?;
            let sub = words(&p, &subgroup)?;
            match enumerate(&p, &sub, limits)? {
                Enumeration::Complete(t) => {
                    if let Some(path) = csv {
                        t.write_csv(std::fs::File::create(&path)?)?;
                    }
                    println!("{}: {}", if sub.is_empty() { "order" } else { "index" }, t.n_cosets());
                    Ok(0)
                }
                Enumeration::Incomplete(i) => {
                    println!("unknown: {:?} limit hit, peak {} cosets", i.limit, i.peak);
                    Ok(3)
                }
            }
        }
        Command::Abelianize { presentation, matrix } => {
            let inv = match (presentation, matrix) {
                (_, Some(m)) => {
                    let m = IntegerMatrix::parse(&m)?;
                    let snf = smith_normal_form(&m);
                    let diag: Vec<String> = snf.diagonal.iter().map(ToString::to_string).collect();
                    println!("diagonal: {}", diag.join(" "));
                    AbelianInvariants {
                        free_rank: m.cols() - snf.rank,
                        torsion: snf.diagonal.into_iter().filter(|d| *d > num_bigint::BigInt::from(1)).collect(),
                    }
                }
                (Some(p), None) => abelian_invariants(&read_presentation(&p)?),
                (None, None) => bail!("give a presentation or --matrix"),
            };
            println!("{inv}");
            Ok(0)
        }
        Command::Quotient { presentation, relator } => {
            let p = read_presentation(&presentation)?;
            let q = p.add_relators(&words(&p, &relator)?)?;
            Ok(report_order("order", &group_order(&q, limits)?))
        }
        Command::MappingTorus { fiber, map } => {
            let p = read_presentation(&fiber)?;
            let mut aut = BTreeMap::new();
            for m in &map {
                let Some((g, w)) = m.split_once('=') else { bail!("--map expects g=word, got {m:?}") };
                let gen = p.generator(g.trim()).with_context(|| format!("unknown generator {g}"))?.clone();
                aut.insert(gen, parse_word(w, Some(p.generators()))?);
            }
            let mt = mapping_torus(&p, &aut)?;
            println!("{}", mt.presentation);
            println!("automorphism: {}", serde_json::to_string(&mt.status)?);
            Ok(0)
        }
        Command::TwistSpun { n, quotient } => {
            let g = twist_spun_trefoil(n)?;
            println!("{g}");
            println!("abelianization: {}", abelian_invariants(&g));
            match quotient {
                Some(m) => {
                    let t = Word::power(g.generator("t").expect("t"), m);
                    let o = group_order(&g.add_relators(&[t])?, limits)?;
                    Ok(report_order(&format!("order of G_{n}/<<t^{m}>>"), &o))
                }
                None => Ok(0),
            }
        }
        Command::Surgery { diagram, wirtinger: link_only } => {
            let d = FramedLinkDiagram::load(&diagram)?;
            let p = if link_only { wirtinger(&d)? } else { surgery_group(&d)? };
            println!("{p}");
            println!("simplified: {}", p.simplify(1000).presentation);
            println!("H1: {}", abelian_invariants(&p));
            Ok(report_order("order", &group_order(&p, limits)?))
        }
        Command::VerifyPaper { claims, format, expectations, record } => {
            let mut ctx = Context::new(limits);
            if let Some(path) = expectations {
                ctx.expectations = Expectations::parse(&std::fs::read_to_string(&path)?)?;
            }
            let report = run_claims(claims.as_deref(), &ctx)?;
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            if let Some(path) = record {
                std::fs::write(&path, Expectations::record(&report).to_json())?;
                eprintln!("wrote {}; review before committing", path.display());
            }
            Ok(report.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
