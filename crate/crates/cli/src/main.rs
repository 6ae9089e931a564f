mod report;
mod svg;

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use floer_bars::battery::{self, DEFAULT_SEED};
use floer_bars::comb_floer::{build_complex, Surface, TwoCurveDiagram, DEFAULT_MAX_WIND};
use floer_bars::filtered_complex::{
    barcode, brute_force_barcode, format_sum, gamma, uz_reduce, ComplexRepr, FilteredComplex,
};
use floer_bars::novikov::Rational;
use floer_bars::persistence::{bar_length_spectrum, boundary_depth, bottleneck_distance, shifted_bottleneck_with, Bar, Barcode};
use floer_bars::radial::feasible::{feasible_barcodes_limited, DEFAULT_SEARCH_LIMIT};
use floer_bars::radial::{
    degree_actions, forced_bar_bound, generators, homotopy_filter, FoldingFamily, LagrangianParams, PiQ,
    RadialProfile,
};
use floer_bars::seidel::{
    averaging_bound, example_case, telescoping_check, verify_hypotheses, CaseName, Monomial, QHPresentation,
};

use report::{Failure, RunReport};

#[derive(Parser)]
#[command(name = "floer-bars", version, about = "Exact barcodes, boundary depth and spectral bounds for filtered Floer-type complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Barcode, bar-length spectrum, β and optionally γ of a complex.
    Barcode(BarcodeArgs),
    /// Bottleneck distance between two barcodes.
    Bottleneck(BottleneckArgs),
    /// Combinatorial Floer complex of a two-curve diagram.
    Combfloer(CombfloerArgs),
    /// Generator spectrum and feasible barcodes of a radial profile.
    Radial(RadialArgs),
    /// Seidel averaging bound for an example case or a presentation.
    Seidel(SeidelArgs),
    /// Runs the property suite and the acceptance battery.
    Check(CheckArgs),
}

#[derive(Args)]
struct BarcodeArgs {
    file: PathBuf,
    /// Degree window LO,HI (half-open).
    #[arg(long, value_parser = parse_pair)]
    window: Option<(i64, i64)>,
    /// Cross-check against the rank-function oracle.
    #[arg(long)]
    oracle: bool,
    /// Degrees FUND,PT of the fundamental and point classes, for γ.
    #[arg(long, value_parser = parse_pair)]
    gamma: Option<(i64, i64)>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write the bars as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct BottleneckArgs {
    b1: PathBuf,
    b2: PathBuf,
    /// Also minimize over global action shifts of the second barcode.
    #[arg(long)]
    mod_shift: bool,
    /// Match bars across degrees.
    #[arg(long)]
    ignore_degrees: bool,
}

#[derive(Args)]
struct CombfloerArgs {
    file: PathBuf,
    #[arg(long, default_value_t = DEFAULT_MAX_WIND)]
    max_wind: i64,
    /// Write the Floer complex as complex JSON.
    #[arg(long)]
    emit_complex: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct RadialArgs {
    file: PathBuf,
    /// Enumerate the feasible barcodes.
    #[arg(long)]
    feasible: bool,
    /// Prune feasible sets along the input's family.
    #[arg(long)]
    homotopy: bool,
    #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
    search_limit: usize,
}

#[derive(Args)]
struct SeidelArgs {
    #[arg(long, conflicts_with = "params")]
    case: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: i64,
    /// Presentation and Seidel element as JSON: {"n","N_L","A_L","M","E","P","S":{"t","X"}}.
    #[arg(long)]
    params: Option<String>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Validate the fixture files in this directory instead of the bundled copies.
    #[arg(long)]
    fixtures: Option<PathBuf>,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected LO,HI")?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

fn read(report: &mut RunReport, path: &Path) -> Result<String, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    report.input(&path.display().to_string(), &bytes);
    String::from_utf8(bytes).map_err(|e| Failure::schema(format!("{}: {e}", path.display())))
}

fn parse<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::schema(format!("{what}: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn load_complex(report: &mut RunReport, path: &Path) -> Result<FilteredComplex, Failure> {
    let repr: ComplexRepr = parse(&read(report, path)?, "complex")?;
    let c = FilteredComplex::try_from(repr);
    report.check("complex-valid", c.is_ok());
    c.map_err(Failure::validation)
}

fn bars_csv(b: &Barcode<Rational>) -> String {
    let mut s = String::from("degree,left,right,multiplicity\n");
    for bar in b.bars() {
        s.push_str(&format!("{},{},{},{}\n", bar.degree, bar.left, bar.right, bar.multiplicity));
    }
    s
}

fn cmd_barcode(a: &BarcodeArgs, report: &mut RunReport) -> Result<(), Failure> {
    let c = load_complex(report, &a.file)?;
    let b = barcode(&c, a.window).map_err(Failure::validation)?;
    let betas = uz_reduce(&c, a.window).map_err(Failure::validation)?.betas();
    let finite: Vec<Rational> = bar_length_spectrum(&b).into_iter().filter_map(|x| x.finite().cloned()).collect();
    report.check("betas-match-finite-lengths", betas == finite);
    report.set("barcode", &b);
    report.set("bar_length_spectrum", bar_length_spectrum(&b));
    report.set("beta", boundary_depth(&b));
    if let Some((fund, pt)) = a.gamma {
        report.set("gamma", gamma(&c, fund, pt).map_err(Failure::validation)?);
    }
    if a.oracle {
        let slow = brute_force_barcode(&c, a.window).map_err(Failure::validation)?;
        report.check("oracle-match", slow == b);
    }
    if let Some(p) = &a.svg {
        write_file(p, &svg::barcode_svg(&b))?;
    }
    if let Some(p) = &a.csv {
        write_file(p, &bars_csv(&b))?;
    }
    Ok(())
}

fn cmd_bottleneck(a: &BottleneckArgs, report: &mut RunReport) -> Result<(), Failure> {
    let b1: Barcode<Rational> = parse(&read(report, &a.b1)?, "first barcode")?;
    let b2: Barcode<Rational> = parse(&read(report, &a.b2)?, "second barcode")?;
    let sensitive = !a.ignore_degrees;
    let d = bottleneck_distance(&b1, &b2, sensitive);
    report.check("symmetric", d == bottleneck_distance(&b2, &b1, sensitive));
    report.set("d", d);
    if a.mod_shift {
        let (dp, c) = shifted_bottleneck_with(&b1, &b2, sensitive);
        report.set("d_shift", dp);
        report.set("c_star", c);
    }
    Ok(())
}

fn cmd_combfloer(a: &CombfloerArgs, report: &mut RunReport) -> Result<(), Failure> {
    let d: TwoCurveDiagram = parse(&read(report, &a.file)?, "diagram")?;
    let built = build_complex(&d, a.max_wind);
    report.check("diagram-admissible", built.is_ok());
    let cf = built.map_err(Failure::validation)?;
    report.check("d-squared-zero", cf.complex.validate().is_ok());
    let table: Vec<String> = cf
        .complex
        .differential_sums()
        .into_iter()
        .map(|(k, v)| format!("d {k} = {}", format_sum(&v)))
        .collect();
    let b = barcode(&cf.complex, None).map_err(Failure::validation)?;
    let beta = boundary_depth(&b);
    report.set("lunes", &cf.lunes);
    report.set("grading", cf.grading.iter().map(|(p, d, a)| json!({"point": p, "degree": d, "action": a})).collect::<Vec<_>>());
    report.set("differential", table);
    report.set("barcode", &b);
    report.set("beta", &beta);
    match cf.gamma() {
        Ok(g) => {
            // the inequality is a statement about closed surfaces
            if d.surface == Surface::Sphere {
                report.check("beta-le-gamma", beta <= g);
            }
            report.set("gamma", g);
        }
        Err(e) => report.set("gamma", json!({"undefined": e.to_string()})),
    }
    if let Some(p) = &a.emit_complex {
        let text = serde_json::to_string_pretty(&cf.complex.to_json()).expect("complex serializes");
        write_file(p, &(text + "\n"))?;
    }
    if let Some(p) = &a.svg {
        write_file(p, &svg::diagram_svg(&d))?;
    }
    Ok(())
}

/// Radial input: a profile, or a folding family (whose t = 1 member is the
/// profile), with the Lagrangian's parameters and the homology ranks.
#[derive(Deserialize)]
struct RadialInput {
    profile: Option<RadialProfile>,
    family: Option<FoldingFamily>,
    #[serde(default = "default_steps")]
    steps: i64,
    #[serde(rename = "C", default = "Rational::one")]
    c: Rational,
    lagrangian: LagrangianParams,
    ranks: BTreeMap<i64, usize>,
}

fn default_steps() -> i64 {
    4
}

fn cmd_radial(a: &RadialArgs, report: &mut RunReport) -> Result<(), Failure> {
    let input: RadialInput = parse(&read(report, &a.file)?, "radial input")?;
    let profile = match (&input.profile, &input.family) {
        (Some(p), _) => p.clone(),
        (None, Some(f)) => f.at(&Rational::one()).map_err(Failure::validation)?,
        (None, None) => return Err(Failure::schema("radial input needs a profile or a family")),
    };
    let valid = profile.validate();
    report.check("profile-valid", valid.is_ok());
    valid.map_err(Failure::validation)?;
    let s = generators(&profile, &input.lagrangian, (0, 0)).map_err(Failure::validation)?.fundamental_domain();
    let degrees: BTreeSet<i64> = s.entries.iter().map(|e| e.degree).collect();
    let actions: BTreeMap<i64, Vec<PiQ>> = degrees.iter().map(|&d| (d, degree_actions(&s, d))).collect();
    report.set("spectrum", &s);
    report.set("degree_actions", actions);
    report.set("forced_bar_bound", forced_bar_bound(&s, &input.ranks).map_err(Failure::validation)?);
    if a.feasible {
        let set = feasible_barcodes_limited(&s, &input.ranks, a.search_limit).map_err(Failure::validation)?;
        report.set("feasible_count", set.len());
    }
    if a.homotopy {
        let fam = input.family.as_ref().ok_or_else(|| Failure::schema("--homotopy needs a family"))?;
        let profiles = fam.samples(input.steps).map_err(Failure::validation)?;
        let sets = homotopy_filter(&profiles, &input.lagrangian, &input.ranks, &input.c, a.search_limit)
            .map_err(Failure::validation)?;
        let last = sets.last().expect("at least one sample");
        let ends = |b: &Barcode<PiQ>| -> BTreeSet<PiQ> {
            b.bars().iter().filter_map(|bar: &Bar<PiQ>| bar.right.finite().cloned()).collect()
        };
        let common = last.iter().map(ends).reduce(|x, y| &x & &y).unwrap_or_default();
        report.set(
            "homotopy",
            json!({
                "samples": input.steps + 1,
                "C": input.c,
                "retained": sets.iter().map(|s| s.len()).collect::<Vec<_>>(),
                "common_right_endpoints": common,
            }),
        );
    }
    Ok(())
}

#[derive(Deserialize)]
struct SeidelParams {
    #[serde(flatten)]
    presentation: QHPresentation,
    #[serde(rename = "S")]
    seidel: Monomial,
}

fn cmd_seidel(a: &SeidelArgs, report: &mut RunReport) -> Result<(), Failure> {
    let (name, presentation, s) = match (&a.case, &a.params) {
        (_, Some(p)) => {
            report.input("params", p.as_bytes());
            let sp: SeidelParams = parse(p, "params")?;
            ("params".to_string(), sp.presentation, sp.seidel)
        }
        (Some(c), None) => {
            report.input("case", format!("{c} {}", a.n).as_bytes());
            let case: CaseName = c.parse().map_err(Failure::schema)?;
            let ex = example_case(case, a.n).map_err(Failure::validation)?;
            (ex.name, ex.presentation, ex.seidel)
        }
        (None, None) => return Err(Failure::schema("give --case or --params")),
    };
    let h = verify_hypotheses(&presentation, s);
    report.check("hypotheses-verified", h.is_ok());
    let h = h.map_err(Failure::validation)?;
    let kappa = presentation.kappa();
    let bound = averaging_bound(&h, &kappa).map_err(Failure::validation)?;
    let tele = telescoping_check(&h, &kappa);
    report.check("telescoping", tele.is_ok());
    report.check("bound-below-A_L", bound < presentation.a_l);
    report.set("case", name);
    report.set("hypotheses", h);
    report.set("bound", bound);
    report.set(
        "telescoping",
        match &tele {
            Ok(_) => json!("ok"),
            Err(e) => json!(e.to_string()),
        },
    );
    Ok(())
}

/// Parses a fixture by its name prefix, re-running the validation its
/// command would.
fn validate_fixture(name: &str, text: &str) -> Result<(), Failure> {
    if name.starts_with("barcode_") {
        parse::<Barcode<Rational>>(text, name)?;
    } else if name.starts_with("complex_") {
        let repr: ComplexRepr = parse(text, name)?;
        FilteredComplex::try_from(repr).map_err(Failure::validation)?;
    } else if name.starts_with("diagram_") {
        let d: TwoCurveDiagram = parse(text, name)?;
        build_complex(&d, DEFAULT_MAX_WIND).map_err(Failure::validation)?;
    } else if name.starts_with("profile_") || name.starts_with("family_") {
        let input: RadialInput = parse(text, name)?;
        if let Some(p) = &input.profile {
            p.validate().map_err(Failure::validation)?;
        }
        if let Some(f) = &input.family {
            f.samples(input.steps).map_err(Failure::validation)?;
        }
        input.lagrangian.check().map_err(Failure::validation)?;
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs, report: &mut RunReport) -> Result<(), Failure> {
    let files: Vec<(String, String)> = match &a.fixtures {
        None => battery::FIXTURES.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect(),
        Some(dir) => {
            let mut names: Vec<PathBuf> = fs::read_dir(dir)
                .map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            names.sort();
            let mut out = Vec::new();
            for p in names {
                let text = read(report, &p)?;
                out.push((p.file_name().unwrap().to_string_lossy().into_owned(), text));
            }
            out
        }
    };
    if a.fixtures.is_none() {
        let all: String = files.iter().map(|(_, t)| t.as_str()).collect();
        report.input("bundled-fixtures", all.as_bytes());
    }
    let mut schema_error = None;
    for (name, text) in &files {
        let r = validate_fixture(name, text);
        report.check(format!("fixture:{name}"), r.is_ok());
        if let Err(f) = r {
            if f.kind != report::ErrorKind::Validation && schema_error.is_none() {
                schema_error = Some(f);
            }
        }
    }
    let results = battery::run_all(a.seed);
    for r in &results {
        if !quiet() {
            eprintln!("{r}");
        }
        report.check(format!("criterion-{}: {}", r.id, r.name), r.passed);
    }
    report.set("seed", a.seed);
    report.set("criteria", &results);
    match schema_error {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// FLOER_BARS_QUIET silences the stderr summary.
fn quiet() -> bool {
    std::env::var_os("FLOER_BARS_QUIET").is_some()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let mut report = RunReport::new("usage");
            report.fail(Failure::schema(e.render().to_string().trim_end()));
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
            if !quiet() {
                let _ = e.print();
            }
            return ExitCode::from(2);
        }
    };
    let (result, mut report) = match &cli.command {
        Command::Barcode(a) => run("barcode", |r| cmd_barcode(a, r)),
        Command::Bottleneck(a) => run("bottleneck", |r| cmd_bottleneck(a, r)),
        Command::Combfloer(a) => run("combfloer", |r| cmd_combfloer(a, r)),
        Command::Radial(a) => run("radial", |r| cmd_radial(a, r)),
        Command::Seidel(a) => run("seidel", |r| cmd_seidel(a, r)),
        Command::Check(a) => run("check", |r| cmd_check(a, r)),
    };
    if let Err(f) = result {
        report.fail(f);
    }
    // a closed pipe on stdout is not worth a panic
    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    if !quiet() {
        eprintln!("{}", report.summary());
    }
    ExitCode::from(report.exit_code() as u8)
}

fn run(command: &'static str, f: impl FnOnce(&mut RunReport) -> Result<(), Failure>) -> (Result<(), Failure>, RunReport) {
    let mut report = RunReport::new(command);
    let result = f(&mut report);
    (result, report)
}
