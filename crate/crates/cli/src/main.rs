mod range;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use chowtwist::catalog::{parse_group, parse_module};
use chowtwist::chow::{twisted_chow, twisted_motivic_klein_details, TwistedChowResult};
use chowtwist::coflasque::{coflasque_witness, flasque_witness, CoflasqueResolution, CoflasqueWitness};
use chowtwist::cohomology::{bar_cohomology_structure, tate};
use chowtwist::graded::{cm_regularity, hilbert_series, klein_chow_presentation, minimal_free_resolution, Relation};
use chowtwist::group::Subgroup;
use chowtwist::verify::{self, Battery};
use chowtwist::{Error, FiniteGroup, GModule, GroupStructure, Ring};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use range::IntRange;

#[derive(Parser)]
#[command(name = "chowtwist", version, about = "Twisted Chow groups of classifying spaces and group cohomology")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(clap::Args)]
struct Target {
    /// C<m>, klein4, Q8, Q16, ... or a JSON group descriptor
    #[arg(long)]
    group: String,
    /// trivialZ, trivialF2, sign, regular, omega:<n>, omega2Z, l_zeta:<x|y|x+y>:<n>,
    /// permutation:<labels>, counterexample:<A|B|P|omega>:<m>, ... or a JSON module descriptor
    #[arg(long)]
    module: String,
}

#[derive(Subcommand)]
enum Command {
    /// H^n(G, M) from the bar complex
    Cohomology {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "0..3")]
        degree: IntRange,
    },
    /// Tate cohomology Ĥ^n(G, M), any integer n
    Tate {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        degree: IntRange,
    },
    /// CH^i(BG, M) for cyclic, Klein four and quaternion groups
    TwistedChow {
        #[command(flatten)]
        target: Target,
        /// Defaults to 0..max-degree
        #[arg(long)]
        degree: Option<IntRange>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Attach and check an independent cohomology value
        #[arg(long)]
        oracle: bool,
        /// Report the exponent of each value
        #[arg(long)]
        show_exponent: bool,
    },
    /// H^{2i,i}(BG, M) through a coflasque resolution (Klein four group)
    TwistedMotivic {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        degree: Option<IntRange>,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
    },
    /// Coflasque resolution 0 → Q → P → M → 0 and (co)flasque tests
    Coflasque {
        #[command(flatten)]
        target: Target,
        /// Keep every permutation summand instead of pruning
        #[arg(long)]
        full: bool,
    },
    /// Presentation, Betti table and regularity of CH^*(B klein4, M) over F_2[u, v]
    Graded {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 12)]
        horizon: usize,
    },
    /// Run a verification battery and print expected against computed values
    VerifyPaper {
        #[arg(value_enum)]
        tag: Tag,
        /// Parameter range for klein, counterexample, regularity and coflasque
        #[arg(long)]
        m: Option<IntRange>,
        /// Cyclic group orders
        #[arg(long)]
        orders: Option<IntRange>,
        /// Random lattices in the coflasque battery
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tag {
    Cyclic,
    Quaternion,
    Klein,
    Counterexample,
    Regularity,
    Transfer,
    Coflasque,
}

/// A failure together with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::InvalidGroup(_)
            | Error::InvalidModule(_)
            | Error::NotSubgroup(_)
            | Error::RingMismatch(_) => 2,
            Error::ResourceCap { .. } | Error::SizePolicy(_) | Error::HorizonTooSmall { .. } => 3,
            Error::UnsupportedFamily(_) => 4,
            _ => 1,
        };
        let message = match &e {
            Error::ResourceCap { what, cells, cap } => {
                format!("{e}\noffending dimension: {cells} cells for {what} (cap {cap}, set CHOWTWIST_MAX_CELLS to raise)")
            }
            _ => e.to_string(),
        };
        Failure { code, message }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

struct Output {
    table: String,
    json: Value,
    ok: bool,
}

fn load(t: &Target) -> Result<GModule, Failure> {
    let g = Arc::new(parse_group(&t.group)?);
    Ok(parse_module(g, &t.module)?)
}

fn rows(pairs: &[(String, String)]) -> String {
    let w = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in pairs {
        let _ = writeln!(s, "{k:<w$} | {v}");
    }
    s
}

fn exponent(v: &GroupStructure, ring: Ring) -> String {
    match v {
        GroupStructure::Abelian(a) => a.exponent().map_or_else(|| "infinite".into(), |e| e.to_string()),
        GroupStructure::Vector { dim: 0 } => "1".into(),
        GroupStructure::Vector { .. } => ring.modulus().map_or_else(|| "?".into(), |p| p.to_string()),
    }
}

fn cmd_cohomology(t: &Target, degree: &IntRange) -> Result<Output, Failure> {
    let m = load(t)?;
    let mut pairs = Vec::new();
    let mut out = Vec::new();
    for n in degree.naturals("--degree").map_err(usage)? {
        let h = bar_cohomology_structure(&m, n)?;
        pairs.push((format!("H^{n}"), h.to_string()));
        out.push(json!({"degree": n, "value": h}));
    }
    let head = format!("H^n({}, {})\n", m.group().name(), t.module);
    Ok(Output { table: head + &rows(&pairs), json: json!({"group": m.group().name(), "module": t.module, "cohomology": out}), ok: true })
}

fn cmd_tate(t: &Target, degree: &IntRange) -> Result<Output, Failure> {
    let m = load(t)?;
    let mut pairs = Vec::new();
    let mut out = Vec::new();
    for n in degree.values() {
        let h = tate(&m, n)?;
        pairs.push((format!("Ĥ^{n}"), h.to_string()));
        out.push(json!({"degree": n, "value": h}));
    }
    let head = format!("Ĥ^n({}, {})\n", m.group().name(), t.module);
    Ok(Output { table: head + &rows(&pairs), json: json!({"group": m.group().name(), "module": t.module, "tate": out}), ok: true })
}

fn chow_degrees(degree: &Option<IntRange>, max_degree: usize) -> Result<Vec<usize>, Failure> {
    let degrees = match degree {
        Some(r) => r.naturals("--degree").map_err(usage)?,
        None => (0..=max_degree).collect(),
    };
    if let Some(&d) = degrees.iter().find(|&&d| d > max_degree) {
        return Err(Failure {
            code: 3,
            message: format!("degree {d} exceeds --max-degree {max_degree}\noffending dimension: degree {d}"),
        });
    }
    Ok(degrees)
}

fn chow_block(r: &TwistedChowResult, ring: Ring, show_exponent: bool) -> String {
    let mut pairs = vec![("value".to_string(), r.value.to_string()), ("method".to_string(), r.method.to_string())];
    if let Some(a) = &r.ambient {
        pairs.push(("ambient".into(), a.to_string()));
    }
    if let Some(o) = &r.oracle {
        pairs.push(("oracle".into(), o.to_string()));
    }
    if show_exponent {
        pairs.push(("exponent".into(), exponent(&r.value, ring)));
    }
    format!("CH^{}(B{}, {})\n{}", r.degree, r.group, r.module, rows(&pairs))
}

fn cmd_twisted_chow(
    t: &Target,
    degree: &Option<IntRange>,
    max_degree: usize,
    oracle: bool,
    show_exponent: bool,
) -> Result<Output, Failure> {
    let degrees = chow_degrees(degree, max_degree)?;
    let m = load(t)?;
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    for i in degrees {
        let r = twisted_chow(&m, i, oracle)?.with_module(&t.module);
        blocks.push(chow_block(&r, m.ring(), show_exponent));
        let mut v = serde_json::to_value(&r).expect("serializable");
        if show_exponent {
            v["exponent"] = json!(exponent(&r.value, m.ring()));
        }
        out.push(v);
    }
    Ok(Output { table: blocks.join("\n"), json: Value::Array(out), ok: true })
}

fn subgroup_name(g: &FiniteGroup, h: &Subgroup) -> String {
    let labels: Vec<&str> = h.elements().iter().map(|&e| g.label(e)).collect();
    format!("{{{}}}", labels.join(","))
}

fn cmd_twisted_motivic(t: &Target, degree: &Option<IntRange>, max_degree: usize) -> Result<Output, Failure> {
    let degrees = chow_degrees(degree, max_degree)?;
    let m = load(t)?;
    let g = m.group();
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    for i in degrees {
        let d = twisted_motivic_klein_details(&m, i)?;
        let value = if d.cokernel.free_rank() == 0 && d.cokernel.torsion().iter().all(|&x| x == 2) {
            GroupStructure::Vector { dim: d.cokernel.torsion().len() }
        } else {
            GroupStructure::Abelian(d.cokernel.clone())
        };
        let name = |s: &[usize]| subgroup_name(g, &g.subgroup(s).expect("subgroup"));
        let b: Vec<String> = d.b_summands.iter().map(|s| name(s)).collect();
        let p: Vec<String> = d.p_summands.iter().map(|s| name(s)).collect();
        let pairs = vec![
            ("value".to_string(), value.to_string()),
            ("first resolution".to_string(), format!("{} summands: {}", b.len(), b.join(" "))),
            ("second resolution".to_string(), format!("{} summands: {}", p.len(), p.join(" "))),
        ];
        blocks.push(format!("H^{{{0},{i}}}(B{1}, {2})\n{3}", 2 * i, g.name(), t.module, rows(&pairs)));
        out.push(json!({"group": g.name(), "module": t.module, "degree": i, "value": value, "details": d}));
    }
    Ok(Output { table: blocks.join("\n"), json: Value::Array(out), ok: true })
}

fn witness_text(g: &FiniteGroup, w: &Option<CoflasqueWitness>) -> String {
    match w {
        None => "yes".into(),
        Some(w) => format!("no, H^1({}, M) = {}", subgroup_name(g, &w.subgroup), w.h1),
    }
}

fn witness_json(g: &FiniteGroup, w: &Option<CoflasqueWitness>) -> Value {
    match w {
        None => json!(true),
        Some(w) => json!({"subgroup": subgroup_name(g, &w.subgroup), "h1": w.h1}),
    }
}

fn cmd_coflasque(t: &Target, full: bool) -> Result<Output, Failure> {
    let m = load(t)?;
    let g = m.group();
    let res = CoflasqueResolution::new(&m, !full)?;
    let report = res.verify()?;
    let summands: Vec<String> = res.summands.iter().map(|h| subgroup_name(g, h)).collect();
    let (cof, fl) = if m.ring() == Ring::Integers {
        (Some(coflasque_witness(&m)?), Some(flasque_witness(&m)?))
    } else {
        (None, None)
    };
    let mut pairs = vec![("module".to_string(), format!("{} over {} (rank {})", t.module, m.ring(), m.rank()))];
    if let (Some(c), Some(f)) = (&cof, &fl) {
        pairs.push(("coflasque".into(), witness_text(g, c)));
        pairs.push(("flasque".into(), witness_text(g, f)));
    }
    pairs.extend([
        ("P summands Z[G/H]".to_string(), summands.join(" ")),
        ("rank P".to_string(), res.permutation.rank().to_string()),
        ("rank Q".to_string(), res.kernel.rank().to_string()),
        ("exact".to_string(), report.exact.to_string()),
        ("P^H → M^H onto".to_string(), report.fixed_points_onto.to_string()),
        ("Q coflasque".to_string(), report.kernel_coflasque.to_string()),
    ]);
    let json = json!({
        "group": g.name(),
        "module": t.module,
        "ring": m.ring().to_string(),
        "rank": m.rank(),
        "coflasque": cof.as_ref().map(|c| witness_json(g, c)),
        "flasque": fl.as_ref().map(|f| witness_json(g, f)),
        "summands": summands,
        "rank_p": res.permutation.rank(),
        "rank_q": res.kernel.rank(),
        "surjection": res.surjection.to_rows(),
        "inclusion": res.inclusion.to_rows(),
        "exact": report.exact,
        "fixed_points_onto": report.fixed_points_onto,
        "kernel_coflasque": report.kernel_coflasque,
    });
    Ok(Output { table: rows(&pairs), json, ok: report.all() })
}

fn relation_text(r: &Relation) -> String {
    let mono = |e: usize, x: &str| match e {
        0 => String::new(),
        1 => format!("{x}·"),
        e => format!("{x}^{e}·"),
    };
    let terms: Vec<String> = r
        .terms
        .iter()
        .map(|t| {
            let c = if t.coeff == 1 { String::new() } else { format!("{}", t.coeff) };
            format!("{c}{}{}e{}", mono(t.u, "u"), mono(t.v, "v"), t.generator)
        })
        .collect();
    format!("degree {}: {}", r.degree, terms.join(" + "))
}

fn cmd_graded(t: &Target, horizon: usize) -> Result<Output, Failure> {
    let m = load(t)?;
    let pres = klein_chow_presentation(&m, horizon)?;
    let betti = minimal_free_resolution(&pres)?;
    let reg = cm_regularity(&betti).ok();
    let hilbert = hilbert_series(&pres, horizon);
    let mut table = rows(&[
        ("Hilbert".to_string(), format!("{hilbert:?}")),
        ("generator degrees".to_string(), format!("{:?}", pres.generators)),
        ("relations".to_string(), pres.relations.len().to_string()),
        ("Betti shape".to_string(), format!("{:?}", betti.shape())),
        ("regularity".to_string(), reg.map_or_else(|| "undefined (zero module)".into(), |r| r.to_string())),
    ]);
    for r in &pres.relations {
        let _ = writeln!(table, "  {}", relation_text(r));
    }
    let _ = write!(table, "{betti}");
    let json = json!({
        "group": m.group().name(),
        "module": t.module,
        "hilbert": hilbert,
        "presentation": pres,
        "betti": betti,
        "regularity": reg,
    });
    Ok(Output { table, json, ok: true })
}

fn naturals(r: &Option<IntRange>, default: std::ops::RangeInclusive<usize>, flag: &str) -> Result<Vec<usize>, Failure> {
    match r {
        Some(r) => r.naturals(flag).map_err(usage),
        None => Ok(default.collect()),
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    tag: &'a str,
    pass: bool,
    batteries: &'a [Battery],
}

fn cmd_verify(tag: Tag, m: &Option<IntRange>, orders: &Option<IntRange>, count: usize) -> Result<Output, Failure> {
    let batteries = match tag {
        Tag::Cyclic => vec![verify::cyclic_battery(naturals(orders, 1..=12, "--orders")?.into_iter().filter(|&n| n > 0))],
        Tag::Quaternion => vec![verify::quaternion_battery()],
        Tag::Klein => vec![verify::klein_battery(naturals(m, 1..=5, "--m")?.into_iter().filter(|&n| n > 0))],
        Tag::Counterexample => vec![verify::counterexample_battery(naturals(m, 2..=6, "--m")?.into_iter().filter(|&n| n >= 1))],
        Tag::Regularity => vec![verify::regularity_battery(naturals(m, 2..=8, "--m")?.into_iter().filter(|&n| n >= 1))],
        Tag::Transfer => vec![verify::transfer_battery()],
        Tag::Coflasque => vec![
            verify::lattice_battery(naturals(m, 2..=6, "--m")?.into_iter().filter(|&n| n >= 1)),
            verify::coflasque_battery(count),
        ],
    };
    let pass = batteries.iter().all(Battery::pass);
    let mut table = String::new();
    for b in &batteries {
        let _ = writeln!(table, "[{}]", b.name);
        let _ = write!(table, "{b}");
    }
    let _ = writeln!(table, "{}", if pass { "PASS" } else { "FAIL" });
    let name = tag.to_possible_value().expect("named").get_name().to_string();
    let json = serde_json::to_value(VerifyReport { tag: &name, pass, batteries: &batteries }).expect("serializable");
    Ok(Output { table, json, ok: pass })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Cohomology { target, degree } => cmd_cohomology(target, degree),
        Command::Tate { target, degree } => cmd_tate(target, degree),
        Command::TwistedChow { target, degree, max_degree, oracle, show_exponent } => {
            cmd_twisted_chow(target, degree, *max_degree, *oracle, *show_exponent)
        }
        Command::TwistedMotivic { target, degree, max_degree } => cmd_twisted_motivic(target, degree, *max_degree),
        Command::Coflasque { target, full } => cmd_coflasque(target, *full),
        Command::Graded { target, horizon } => cmd_graded(target, *horizon),
        Command::VerifyPaper { tag, m, orders, count } => cmd_verify(*tag, m, orders, *count),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Table => print!("{}", out.table),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
