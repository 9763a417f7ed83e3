mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use sumfree_core::fourier::{
    coset_densities, density, final_inequality_margin, final_inequality_scan, find_negative_character,
    parseval_residual, spectrum_rows, triple_identity,
};
use sumfree_core::search::{enumerate_maximal_sumfree, threads_from_env, EnumerationConfig, DEFAULT_NODE_BUDGET};
use sumfree_core::set::kneser_verify;
use sumfree_core::sumfree::{
    example1_construct, example1_rank_one, in_nonzero_coset, is_maximal_sum_free, is_two_coset, maximal_extension,
    sum_free_violation, ConstructionSpec, ConstructionVariant,
};
use sumfree_core::textio::{parse_set, write_set};
use sumfree_core::theorems::{check_theorem, DriverOptions, Statement, Verdict};
use sumfree_core::{DenseSet, Element, GroupSpec, SetRecord, Subgroup};

use output::*;

const EXIT_VIOLATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

#[derive(Parser)]
#[command(name = "sumfree", version, about = "Sum-free sets in Z_p^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check properties of a set read from a file.
    VerifySet {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "sumfree,maximal,period,two-coset")]
        check: Vec<CheckKind>,
        #[arg(long)]
        json: bool,
    },
    /// List maximal sum-free sets up to GL(n, p).
    Enumerate {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        min_size: usize,
        /// Enumerate every set instead of orbit representatives.
        #[arg(long)]
        no_symmetry: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Fourier data of a set, or the final inequality scan.
    Fourier {
        #[arg(long, required_unless_present = "scan_step")]
        file: Option<PathBuf>,
        /// Scan the final inequality on [0.3, 1) with this grid step.
        #[arg(long)]
        scan_step: Option<f64>,
        #[arg(long)]
        json: bool,
    },
    /// Build a construction instance.
    Construct {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Generator of H, as comma-separated coordinates; repeatable.
        #[arg(long = "gen")]
        generators: Vec<String>,
        #[arg(long)]
        h: Option<String>,
        #[arg(long)]
        e: String,
        #[arg(long)]
        json: bool,
    },
    /// Verify a statement by exhaustive enumeration.
    CheckTheorem {
        #[arg(long, value_parser = parse_statement)]
        statement: Statement,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: u32,
        /// Override the statement's size threshold.
        #[arg(long)]
        min_size: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(long)]
        json: bool,
    },
    /// Check Kneser's bound on two or more sets.
    Kneser {
        #[arg(long = "file", required = true, num_args = 1..)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Print the JSON schema of command outputs.
    ReportSchema {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(COMMANDS))]
        command: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Sumfree,
    Maximal,
    Period,
    TwoCoset,
    NonzeroCoset,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Literal,
    Shifted,
    RankOne,
}

fn parse_statement(s: &str) -> Result<Statement, String> {
    Statement::parse(s).ok_or_else(|| {
        let ids: Vec<&str> = Statement::ALL.iter().map(Statement::id).collect();
        format!("unknown statement '{s}' (expected one of {})", ids.join(", "))
    })
}

/// A failure that maps to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::VerifySet { file, check, json } => verify_set(&file, &check, json),
        Command::Enumerate { p, n, min_size, no_symmetry, budget, json } => {
            enumerate(p, n, min_size, !no_symmetry, budget, json)
        }
        Command::Fourier { file, scan_step, json } => fourier(file.as_deref(), scan_step, json),
        Command::Construct { variant, p, n, generators, h, e, json } => {
            construct(variant, p, n, &generators, h.as_deref(), &e, json)
        }
        Command::CheckTheorem { statement, p, n, min_size, budget, json } => {
            theorem(statement, p, n, min_size, budget, json)
        }
        Command::Kneser { files, json } => kneser(&files, json),
        Command::ReportSchema { command } => {
            let v = match command {
                Some(c) => schema(&c).expect("validated by clap"),
                None => all_schemas(),
            };
            print_json(&v);
            Ok(0)
        }
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("output serializes"));
}

fn read_set(path: &std::path::Path) -> Result<DenseSet, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_set(&text, None).map_err(|e| Failure { code: EXIT_USAGE, message: format!("{}: {e}", path.display()) })
}

fn coords_of(g: GroupSpec, idx: &[usize]) -> Vec<Vec<u32>> {
    idx.iter().map(|&i| g.coords(i)).collect()
}

fn verify_set(file: &std::path::Path, checks: &[CheckKind], json: bool) -> Outcome {
    let a = read_set(file)?;
    let g = a.group();
    let mut results = Vec::new();
    for &kind in checks {
        let r = match kind {
            CheckKind::Sumfree => match sum_free_violation(&a) {
                None => CheckResult { name: "sumfree".into(), pass: true, detail: "A ∩ 2A = ∅".into(), witness: vec![] },
                Some((x, y, z)) => CheckResult {
                    name: "sumfree".into(),
                    pass: false,
                    detail: "x + y = z inside A".into(),
                    witness: coords_of(g, &[x, y, z]),
                },
            },
            CheckKind::Maximal => match maximal_extension(&a) {
                Err(e) => CheckResult { name: "maximal".into(), pass: false, detail: e.to_string(), witness: vec![] },
                Ok(None) => CheckResult { name: "maximal".into(), pass: true, detail: "no extension".into(), witness: vec![] },
                Ok(Some(u)) => CheckResult {
                    name: "maximal".into(),
                    pass: false,
                    detail: "A ∪ {u} stays sum-free".into(),
                    witness: coords_of(g, &[u]),
                },
            },
            CheckKind::Period => {
                let h = a.period();
                CheckResult {
                    name: "period".into(),
                    pass: true,
                    detail: format!("|π(A)| = {}, {}", h.order(), if h.is_trivial() { "aperiodic" } else { "periodic" }),
                    witness: h.basis().to_vec(),
                }
            }
            CheckKind::TwoCoset => match is_two_coset(&a) {
                Some(w) => CheckResult {
                    name: "two-coset".into(),
                    pass: true,
                    detail: format!("A ⊆ ±{} + H, |H| = {}", w.e, w.subgroup.order()),
                    witness: vec![w.e.coords()],
                },
                None => CheckResult { name: "two-coset".into(), pass: false, detail: "no witness".into(), witness: vec![] },
            },
            CheckKind::NonzeroCoset => match in_nonzero_coset(&a) {
                Some(w) => CheckResult {
                    name: "nonzero-coset".into(),
                    pass: true,
                    detail: format!("A ⊆ {} + H, |H| = {}", w.g, w.subgroup.order()),
                    witness: vec![w.g.coords()],
                },
                None => {
                    CheckResult { name: "nonzero-coset".into(), pass: false, detail: "no witness".into(), witness: vec![] }
                }
            },
        };
        results.push(r);
    }
    let all_pass = results.iter().all(|r| r.pass);
    if json {
        print_json(&VerifySetOutput { group: g.into(), set: SetRecord::from(&a), checks: results, all_pass });
    } else {
        println!("{g}, |A| = {}", a.len());
        for r in &results {
            println!("{:<14} {}  {}", r.name, if r.pass { "pass" } else { "FAIL" }, r.detail);
        }
    }
    Ok(if all_pass { 0 } else { EXIT_VIOLATION })
}

fn enumerate(p: u32, n: u32, min_size: usize, symmetry: bool, budget: u64, json: bool) -> Outcome {
    let g = GroupSpec::new(p, n)?;
    let cfg = EnumerationConfig { min_size, symmetry, budget, ..Default::default() };
    let run = enumerate_maximal_sumfree(g, &cfg);
    if json {
        print_json(&run.record());
    } else {
        println!(
            "# {g}: {} maximal sum-free sets of size >= {min_size} in {} {}",
            run.total_count(),
            run.reps.len(),
            if symmetry { "orbits" } else { "sets" }
        );
        for r in &run.reps {
            println!("# size {}, orbit {}", r.set.len(), r.orbit_size);
            print!("{}", write_set(&r.set));
        }
    }
    if !run.exhaustive {
        eprintln!("budget of {budget} nodes exhausted after {} nodes", run.node_count);
        return Ok(EXIT_INCONCLUSIVE);
    }
    Ok(0)
}

fn fourier(file: Option<&std::path::Path>, scan_step: Option<f64>, json: bool) -> Outcome {
    let mut out = FourierOutput {
        group: None,
        density: None,
        spectrum: vec![],
        parseval_residual: None,
        triple: None,
        negative_character: None,
        coset_densities: None,
        scan_step: None,
        worst_margin: None,
        margin_at_start: None,
    };
    let mut code = 0;
    if let Some(step) = scan_step {
        let worst = final_inequality_scan(step)?;
        out.scan_step = Some(step);
        out.worst_margin = Some(worst);
        out.margin_at_start = Some(final_inequality_margin(0.3));
        if worst >= 0.0 {
            code = EXIT_VIOLATION;
        }
    }
    if let Some(path) = file {
        let a = read_set(path)?;
        let g = a.group();
        out.group = Some(g.into());
        out.density = Some(density(&a));
        out.spectrum = spectrum_rows(&a).into_iter().map(|(c, re, im)| SpectrumRow { c, re, im }).collect();
        out.parseval_residual = Some(parseval_residual(&a));
        let t = triple_identity(&a);
        out.triple = Some(TripleRecord {
            fourier_sum_re: t.fourier_sum.re,
            fourier_sum_im: t.fourier_sum.im,
            solution_count: t.solution_count,
            residual: t.residual(g),
        });
        if sum_free_violation(&a).is_none() && !a.is_empty() {
            match find_negative_character(&a) {
                Ok((chi, neg)) => {
                    out.coset_densities = Some(coset_densities(&a, &chi)?);
                    out.negative_character = Some(neg);
                }
                Err(e) => {
                    eprintln!("{e}");
                    code = EXIT_VIOLATION;
                }
            }
        }
    }
    if json {
        print_json(&out);
    } else {
        print_fourier(&out);
    }
    Ok(code)
}

fn print_fourier(out: &FourierOutput) {
    if let (Some(step), Some(worst)) = (out.scan_step, out.worst_margin) {
        println!("final inequality: step {step}, worst margin {worst:.6}");
        if let Some(m) = out.margin_at_start {
            println!("margin at 0.3: {m:.6}");
        }
    }
    if let Some(alpha) = out.density {
        println!("density {alpha:.6}");
        for row in &out.spectrum {
            let c: Vec<String> = row.c.iter().map(u32::to_string).collect();
            println!("  ({})  {:+.6} {:+.6}i", c.join(","), row.re, row.im);
        }
    }
    if let Some(r) = out.parseval_residual {
        println!("parseval residual {r:.3e}");
    }
    if let Some(t) = &out.triple {
        println!("solutions of x+y=z: {}, residual {:.3e}", t.solution_count, t.residual);
    }
    if let Some(neg) = &out.negative_character {
        let c: Vec<String> = neg.character.iter().map(u32::to_string).collect();
        println!("negative character ({}): re {:.6} <= {:.6}", c.join(","), neg.re_value, neg.threshold);
    }
    if let Some(d) = &out.coset_densities {
        let alphas: Vec<String> = d.alphas.iter().map(|x| format!("{x:.4}")).collect();
        println!("coset densities [{}], identity residual {:.3e}", alphas.join(", "), d.identity_residual);
    }
}

fn parse_element(g: GroupSpec, text: &str) -> Result<Element, Failure> {
    let coords = text
        .split(',')
        .map(|t| t.trim().parse::<u32>().map_err(|e| format!("bad coordinate '{t}': {e}")))
        .collect::<Result<Vec<u32>, String>>()?;
    Ok(g.element_from_coords(&coords)?)
}

fn construct(
    variant: VariantArg,
    p: u32,
    n: u32,
    generators: &[String],
    h: Option<&str>,
    e: &str,
    json: bool,
) -> Outcome {
    let g = GroupSpec::new(p, n)?;
    let e = parse_element(g, e)?;
    let (name, set) = match variant {
        VariantArg::RankOne => ("rank-one", example1_rank_one(&e)?),
        VariantArg::Literal | VariantArg::Shifted => {
            let gens = generators.iter().map(|s| parse_element(g, s)).collect::<Result<Vec<_>, _>>()?;
            let h = h.ok_or_else(|| "--h is required for this variant".to_string())?;
            let spec = ConstructionSpec {
                variant: if variant == VariantArg::Literal {
                    ConstructionVariant::Literal
                } else {
                    ConstructionVariant::Shifted
                },
                subgroup: Subgroup::span(g, &gens)?,
                h: parse_element(g, h)?,
                e,
            };
            (if variant == VariantArg::Literal { "literal" } else { "shifted" }, example1_construct(&spec)?)
        }
    };
    let sum_free = sum_free_violation(&set).is_none();
    let out = ConstructOutput {
        group: g.into(),
        variant: name.into(),
        set: SetRecord::from(&set),
        sum_free,
        maximal: sum_free && is_maximal_sum_free(&set)?,
        periodic: set.is_periodic(),
    };
    if json {
        print_json(&out);
    } else {
        print!("{}", write_set(&set));
        eprintln!("size {}, sum-free {}, maximal {}, periodic {}", set.len(), out.sum_free, out.maximal, out.periodic);
    }
    Ok(0)
}

fn theorem(statement: Statement, p: u32, n: u32, min_size: Option<usize>, budget: u64, json: bool) -> Outcome {
    let g = GroupSpec::new(p, n)?;
    let opts = DriverOptions { budget, threads: threads_from_env(), min_size };
    let report = check_theorem(statement, g, &opts)?;
    if json {
        print_json(&report);
    } else {
        println!("{} on {g}: {:?} (threshold {})", statement.id(), report.verdict, report.threshold);
        for (k, v) in &report.counts {
            println!("  {k}: {v}");
        }
        if let Some(c) = &report.classification {
            println!("  aperiodic sizes: {:?}", c.aperiodic_size_histogram);
            for f in &c.families {
                println!(
                    "  family {}: size {}, sum-free {}, maximal {}, periodic {}",
                    f.name, f.size, f.sum_free, f.maximal, f.periodic
                );
            }
        }
        for w in &report.witnesses {
            println!("  witness: {:?}", w.elements);
        }
    }
    Ok(match report.verdict {
        Verdict::Verified => 0,
        Verdict::Counterexample => EXIT_VIOLATION,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    })
}

fn kneser(files: &[PathBuf], json: bool) -> Outcome {
    let sets = files.iter().map(|f| read_set(f)).collect::<Result<Vec<_>, _>>()?;
    let report = kneser_verify(&sets)?;
    let record = report.record();
    if json {
        print_json(&KneserOutput { group: sets[0].group().into(), report: record.clone() });
    } else {
        println!(
            "|ΣA_i| = {} >= {} (|H| = {}): {}",
            record.lhs,
            record.rhs,
            record.period_order,
            if record.holds { "holds" } else { "FAILS" }
        );
    }
    Ok(if record.holds { 0 } else { EXIT_VIOLATION })
}
