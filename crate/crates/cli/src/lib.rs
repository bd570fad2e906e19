//! Command dispatch for the `hqft` binary: argument definitions, file
//! loading and the [`RunReport`] written by every subcommand.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use hqft_core::categories::{crossed_invariance_suite, modular_data, verlinde_algebra, ThinCategory};
use hqft_core::cocycles::{derived_identities, verify_all};
use hqft_core::constructions::{aut0_pointlike, canonical_extension, transfer};
use hqft_core::hopf::{
    build_a_pi, build_r_theta_from_ribbon, group_likes, mirror_coalgebra, mirror_ribbon, verify_crossed, verify_hopf,
    verify_pi_coalgebra, verify_quasitriangular, verify_ribbon, verify_ribbon_hopf, HopfAction, Variant,
};
use hqft_core::hqft2d::{block_dimension, crossed_algebra, mutation_detection, torus_descriptions, torus_fixed_points, Mark, SurfaceSpec};
use hqft_core::io::{self, format_value, HopfInput};
use hqft_core::surgery::{builtin_presentation, check_special, kirby_test, tau, Builtin, SurgeryPresentation};
use hqft_core::{fixtures, Error, FiniteGroup, GroupHom, Report, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Parser)]
#[command(name = "hqft", version, about = "Exact invariants and axiom checks for ribbon crossed group-categories")]
pub struct Cli {
    /// Re-express the loaded category over Q(ζ_N); N must be a multiple of its order.
    #[arg(long, global = true)]
    pub cyclotomic_order: Option<u32>,
    /// Sign of the rank D.
    #[arg(long, global = true, default_value = "+", allow_hyphen_values = true, value_parser = parse_sign)]
    pub dsign: DSign,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the run report as JSON to this path.
    #[arg(long, global = true)]
    pub json_report: Option<PathBuf>,
    /// Record wall-clock time in the report (makes it run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Sign of D: `true` for the positive root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DSign(pub bool);

fn parse_sign(s: &str) -> std::result::Result<DSign, String> {
    match s {
        "+" => Ok(DSign(true)),
        "-" => Ok(DSign(false)),
        _ => Err(format!("expected + or -, got {:?}", s)),
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the cocycle, braiding and twist identities of a tuple file.
    VerifyCocycle { file: PathBuf },
    /// Run the crossed-category axioms and, when available, modular data.
    VerifyCategory { category: PathBuf },
    /// Evaluate a colored closed diagram.
    EvalLink { category: PathBuf, diagram: PathBuf },
    /// Compute the surgery invariant of a presentation file or builtin
    /// (`S3`, `S1xS2(a)`, `lens(p,a)`, `trefoil(a)`).
    Tau {
        category: PathBuf,
        surgery: String,
        #[arg(long)]
        tau_prime: bool,
    },
    /// Apply random Kirby moves and check that the invariant is unchanged.
    KirbyTest {
        category: PathBuf,
        surgery: String,
        #[arg(long, default_value_t = 5)]
        moves: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
    /// Build and verify the algebra of colors.
    Verlinde { category: PathBuf },
    /// Verify the crossed algebra of a category and run mutation testing.
    VerifyCrossedAlgebra {
        category: PathBuf,
        #[arg(long, default_value_t = 1000)]
        mutations: usize,
    },
    /// Dimensions of block modules of a closed or marked surface.
    Blocks {
        category: PathBuf,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// Comma-separated group element indices, one per handle.
        #[arg(long, value_delimiter = ',')]
        alphas: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        betas: Vec<usize>,
        /// Comma-separated signed simples, e.g. `+1,-2`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        marks: Vec<String>,
    },
    /// Transfer a category along an embedding into a larger group.
    Transfer {
        category: PathBuf,
        /// Target group: `cyclic:n`, `product:n1xn2`, `s3` or `q8`.
        #[arg(long)]
        pi: String,
        /// Images of the base group elements, comma-separated.
        #[arg(long, value_delimiter = ',')]
        embedding: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        reps: Vec<usize>,
    },
    /// Canonical extension of a pointlike category.
    Extend {
        category: PathBuf,
        /// Elements of the automorphism group to extend by; all when omitted.
        #[arg(long, value_delimiter = ',')]
        subgroup: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a Hopf algebra file and its ribbon data.
    HopfVerify { file: PathBuf },
    /// Build the group-coalgebra of a Hopf algebra with a group action.
    HopfBuild {
        file: PathBuf,
        #[arg(long, default_value = "plain")]
        variant: Variant,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build, mirror and compare with the other variant.
    HopfMirror {
        file: PathBuf,
        #[arg(long, default_value = "plain")]
        variant: Variant,
    },
    /// Write the shipped fixture corpus.
    Fixtures { dir: PathBuf },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::VerifyCocycle { .. } => "verify-cocycle",
            Command::VerifyCategory { .. } => "verify-category",
            Command::EvalLink { .. } => "eval-link",
            Command::Tau { .. } => "tau",
            Command::KirbyTest { .. } => "kirby-test",
            Command::Verlinde { .. } => "verlinde",
            Command::VerifyCrossedAlgebra { .. } => "verify-crossed-algebra",
            Command::Blocks { .. } => "blocks",
            Command::Transfer { .. } => "transfer",
            Command::Extend { .. } => "extend",
            Command::HopfVerify { .. } => "hopf-verify",
            Command::HopfBuild { .. } => "hopf-build",
            Command::HopfMirror { .. } => "hopf-mirror",
            Command::Fixtures { .. } => "fixtures",
        }
    }
}

/// Everything a run produced. Exact values are rendered as sums of rational
/// multiples of powers of ζ_N.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<String>,
    pub results: BTreeMap<String, String>,
    pub reports: Vec<Report>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(Report::passed)
    }

    fn result(&mut self, key: &str, value: impl ToString) {
        self.results.insert(key.to_string(), value.to_string());
    }

    /// Plain-text rendering for the terminal.
    pub fn render(&self) -> String {
        let mut s = format!("{} {}\n", self.command, self.inputs.join(" "));
        for (k, v) in &self.results {
            s.push_str(&format!("  {} = {}\n", k, v));
        }
        for r in &self.reports {
            for c in &r.checks {
                let mark = if c.passed() { "ok  " } else { "FAIL" };
                let partial = if c.partial { " (partial)" } else { "" };
                s.push_str(&format!("  [{}] {}/{} ({} cases){}\n", mark, r.name, c.name, c.tested, partial));
                for w in c.witnesses.iter().take(3) {
                    s.push_str(&format!("         {}\n", w));
                }
            }
        }
        s.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
        s
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e)))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::Validation(format!("cannot write {}: {}", path.display(), e)))
}

fn file_id(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

fn in_context(path: &Path, e: Error) -> Error {
    match e {
        Error::Parse(m) => Error::Parse(format!("{}: {}", path.display(), m)),
        other => other,
    }
}

/// Parses a group description: `cyclic:n`, `product:...`, `s3` or `q8`.
pub fn parse_group(spec: &str) -> Result<FiniteGroup> {
    match spec.trim().to_ascii_lowercase().as_str() {
        "s3" => Ok(FiniteGroup::symmetric3()),
        "q8" => Ok(FiniteGroup::quaternion()),
        _ => FiniteGroup::parse(spec),
    }
}

struct Runner {
    order: Option<u32>,
    positive: bool,
    seed: u64,
}

impl Runner {
    fn category(&self, path: &Path, rep: &mut RunReport) -> Result<ThinCategory> {
        let c = io::load_category(&read(path)?).map_err(|e| in_context(path, e))?;
        rep.category = Some(file_id(path));
        match self.order {
            Some(m) if m != c.order() => io::lift_category(&c, m),
            _ => Ok(c),
        }
    }

    fn surgery(&self, spec: &str, c: &ThinCategory) -> Result<SurgeryPresentation> {
        let path = Path::new(spec);
        if path.exists() {
            io::load_surgery(&read(path)?).map_err(|e| in_context(path, e))
        } else {
            builtin_presentation(&Builtin::parse(spec)?, c.group())
        }
    }

    fn hopf(&self, path: &Path) -> Result<HopfInput> {
        io::load_hopf(&read(path)?).map_err(|e| in_context(path, e))
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    fn modular(&self, c: &ThinCategory, rep: &mut RunReport) {
        if !c.is_strict() || c.unit().is_err() {
            rep.result("modular", "not applicable");
            return;
        }
        match modular_data(c, self.positive) {
            Ok(md) => {
                rep.result("modular", "yes");
                rep.result("D", format_value(&md.rank));
                rep.result("D^2", format_value(&md.d2));
                rep.result("Delta+", format_value(&md.delta_plus));
                rep.result("Delta-", format_value(&md.delta_minus));
            }
            Err(e) => rep.result("modular", format!("no: {}", e)),
        }
    }

    fn run(&self, cmd: &Command, rep: &mut RunReport) -> Result<()> {
        match cmd {
            Command::VerifyCocycle { file } => {
                rep.inputs.push(file.display().to_string());
                let t = io::load_tuple(&read(file)?).map_err(|e| in_context(file, e))?;
                rep.category = Some(file_id(file));
                rep.result("group", t.group().spec_string());
                rep.result("order", t.order());
                rep.reports.push(verify_all(&t));
                let (ids, _) = derived_identities(&t);
                rep.reports.push(ids);
            }
            Command::VerifyCategory { category } => {
                rep.inputs.push(category.display().to_string());
                let c = self.category(category, rep)?;
                rep.result("simples", c.len());
                rep.result("counts", format!("{:?}", c.counts()));
                rep.reports.push(crossed_invariance_suite(&c));
                self.modular(&c, rep);
            }
            Command::EvalLink { category, diagram } => {
                rep.inputs.extend([category.display().to_string(), diagram.display().to_string()]);
                let c = self.category(category, rep)?;
                let f = io::parse_diagram_file(&read(diagram)?).map_err(|e| in_context(diagram, e))?;
                let t = f.colored(&c)?;
                let check = t.validate(&c);
                let ok = check.passed();
                rep.reports.push(check);
                if ok {
                    let v = t.evaluate(&c)?;
                    rep.result("F", format_value(&v.scalar));
                }
            }
            Command::Tau { category, surgery, tau_prime } => {
                rep.inputs.extend([category.display().to_string(), surgery.clone()]);
                let c = self.category(category, rep)?;
                let p = self.surgery(surgery, &c)?;
                rep.reports.push(check_special(&p, c.group()));
                let t = tau(&p, &c, self.positive)?;
                rep.result("tau", format_value(&t.value));
                if *tau_prime {
                    rep.result("tau'", format_value(&t.tau_prime));
                }
                rep.result("F", format_value(&t.functor_value));
                rep.result("D", format_value(&t.rank));
                rep.result("Delta-", format_value(&t.delta_minus));
                rep.result("sigma", t.signature.sigma);
                rep.result("b1", t.signature.b1);
                rep.result("components", t.n_components);
            }
            Command::KirbyTest { category, surgery, moves, trials } => {
                rep.inputs.extend([category.display().to_string(), surgery.clone()]);
                let c = self.category(category, rep)?;
                let p = self.surgery(surgery, &c)?;
                rep.result("tau", format_value(&tau(&p, &c, true)?.value));
                rep.result("moves", moves);
                rep.result("trials", trials);
                let mut rng = self.rng();
                let mut all = Report::new("Kirby-move invariance");
                for _ in 0..*trials {
                    let r = kirby_test(&p, &c, *moves, &mut rng)?;
                    merge(&mut all, r);
                }
                rep.reports.push(all);
            }
            Command::Verlinde { category } => {
                rep.inputs.push(category.display().to_string());
                let c = self.category(category, rep)?;
                let v = verlinde_algebra(&c)?;
                rep.result("dimension", v.len());
                rep.result("unit rank", v.unit_rank());
                rep.reports.push(v.verify(c.group()));
                self.modular(&c, rep);
            }
            Command::VerifyCrossedAlgebra { category, mutations } => {
                rep.inputs.push(category.display().to_string());
                let c = self.category(category, rep)?;
                let a = crossed_algebra(&c)?;
                rep.result("dimension", a.len());
                rep.reports.push(a.verify());
                if *mutations > 0 {
                    let (caught, missed) = mutation_detection(&a, *mutations, &mut self.rng());
                    rep.result("mutations detected", format!("{}/{}", caught, mutations));
                    let mut r = Report::new("mutation testing");
                    r.single("at least 99% of mutations detected", caught * 100 >= 99 * mutations, || {
                        format!("{} of {} caught; first missed {:?}", caught, mutations, missed.first())
                    });
                    rep.reports.push(r);
                }
            }
            Command::Blocks { category, genus, alphas, betas, marks } => {
                rep.inputs.push(category.display().to_string());
                let c = self.category(category, rep)?;
                let u = c.group().unit();
                let pad = |v: &[usize]| -> Result<Vec<usize>> {
                    match v.len() {
                        0 => Ok(vec![u; *genus]),
                        n if n == *genus => Ok(v.to_vec()),
                        n => Err(Error::Validation(format!("expected {} handle labels, got {}", genus, n))),
                    }
                };
                let alphas = pad(alphas)?;
                let betas = pad(betas)?;
                let marks = marks.iter().map(|m| parse_mark(m, &c)).collect::<Result<Vec<_>>>()?;
                let spec = SurfaceSpec { marks: marks.clone(), alphas: alphas.clone(), betas: betas.clone() };
                rep.result("dimension", block_dimension(&c, &spec)?);
                if *genus == 1 && marks.len() <= 1 {
                    let d = torus_descriptions(&c, marks.first().copied(), alphas[0], betas[0])?;
                    let mut r = Report::new("torus descriptions");
                    r.single("the three torus descriptions agree", d[0] == d[1] && d[1] == d[2], || format!("{:?}", d));
                    if marks.is_empty() {
                        let fp = torus_fixed_points(&c, alphas[0], betas[0]);
                        rep.result("fixed points", fp);
                        r.single("dimension equals the fixed-point count", fp == d[0], || format!("{} vs {}", d[0], fp));
                    }
                    rep.reports.push(r);
                }
            }
            Command::Transfer { category, pi, embedding, reps } => {
                rep.inputs.push(category.display().to_string());
                let c = self.category(category, rep)?;
                let pi = parse_group(pi)?;
                let images = if embedding.is_empty() { c.group().elements().collect() } else { embedding.clone() };
                let emb = GroupHom::finite(c.group().clone(), pi.clone(), images)?;
                let reps = if reps.is_empty() { None } else { Some(reps.clone()) };
                let (t, r) = transfer(&c, &pi, &emb, reps)?;
                rep.result("index", t.index());
                rep.result("unit rank", t.unit_rank());
                rep.result("simple objects", t.objects(1).len());
                rep.result("objects of support at most two", t.objects(2).len());
                rep.reports.push(r);
            }
            Command::Extend { category, subgroup, out } => {
                rep.inputs.push(category.display().to_string());
                let c = self.category(category, rep)?;
                let sub = if subgroup.is_empty() { aut0_pointlike(&c)?.0.elements().collect() } else { subgroup.clone() };
                let (e, r) = canonical_extension(&c, &sub)?;
                rep.result("simples", e.len());
                rep.result("counts", format!("{:?}", e.counts()));
                rep.result("unit rank", e.units().len());
                rep.reports.push(r);
                rep.reports.push(crossed_invariance_suite(&e));
                self.modular(&e, rep);
                if let Some(out) = out {
                    write(out, &io::save_thin(&e)?)?;
                    rep.result("written", out.display());
                }
            }
            Command::HopfVerify { file } => {
                rep.inputs.push(file.display().to_string());
                let h = self.hopf(file)?;
                rep.result("dimension", h.hopf.dim());
                rep.reports.push(verify_hopf(&h.hopf));
                if let Ok(gl) = group_likes(&h.hopf) {
                    rep.result("group-likes", gl.group.order());
                }
                if let (Some(r), Some(v)) = (&h.r_matrix, &h.ribbon) {
                    rep.reports.push(verify_ribbon_hopf(&h.hopf, r, v));
                }
            }
            Command::HopfBuild { file, variant, out } => {
                rep.inputs.push(file.display().to_string());
                rep.result("variant", variant_name(*variant));
                let h = self.hopf(file)?;
                let (a, rt) = build(&h, *variant)?;
                rep.result("group", a.group.spec_string());
                push_coalgebra_reports(rep, &a, rt.as_ref());
                if let Some(out) = out {
                    let text = io::save_pi_coalgebra(&a, rt.as_ref().map(|x| &x.0), rt.as_ref().map(|x| &x.1))?;
                    write(out, &text)?;
                    rep.result("written", out.display());
                }
            }
            Command::HopfMirror { file, variant } => {
                rep.inputs.push(file.display().to_string());
                rep.result("variant", variant_name(*variant));
                let h = self.hopf(file)?;
                let other = match variant {
                    Variant::Plain => Variant::Bar,
                    Variant::Bar => Variant::Plain,
                };
                let (a, rt) = build(&h, *variant)?;
                let (b, _) = build(&h, other)?;
                let mut r = Report::new("mirror");
                match &rt {
                    Some((rm, tw)) => {
                        let (m, mr, mt) = mirror_ribbon(&a, rm, tw);
                        push_coalgebra_reports(rep, &m, Some(&(mr.clone(), mt.clone())));
                        let (mm, mmr, mmt) = mirror_ribbon(&m, &mr, &mt);
                        r.single("mirror is an involution", mm == a && &mmr == rm && &mmt == tw, String::new);
                    }
                    None => {
                        let m = mirror_coalgebra(&a);
                        push_coalgebra_reports(rep, &m, None);
                        r.single("mirror is an involution", mirror_coalgebra(&m) == a, String::new);
                    }
                }
                r.single("mirror equals the other variant", mirror_coalgebra(&a) == b, String::new);
                rep.reports.push(r);
            }
            Command::Fixtures { dir } => {
                rep.inputs.push(dir.display().to_string());
                fs::create_dir_all(dir).map_err(|e| Error::Validation(format!("cannot create {}: {}", dir.display(), e)))?;
                let files = fixtures::corpus()?;
                let mut r = Report::new("fixtures");
                let rt = r.begin("save after load reproduces the file byte for byte");
                for (name, text) in &files {
                    write(&dir.join(name), text)?;
                    let again = resave(name, text);
                    r.record(rt, again.as_deref() == Ok(text.as_str()), || format!("{}: {:?}", name, again.err()));
                }
                rep.result("files", files.len());
                r.single("at least twenty fixture files", files.len() >= 20, || files.len().to_string());
                rep.reports.push(r);
            }
        }
        Ok(())
    }
}

/// Loads a fixture file by extension and saves it again.
pub fn resave(name: &str, text: &str) -> Result<String> {
    if name.ends_with(".toml") {
        io::save_category_file(&io::parse_category_file(text)?)
    } else if name.ends_with(".surgery") {
        io::save_surgery(&io::load_surgery(text)?)
    } else if name.ends_with(".hopf.json") {
        io::save_hopf(&io::load_hopf(text)?)
    } else if name.ends_with(".json") {
        io::save_diagram_file(&io::parse_diagram_file(text)?)
    } else {
        Err(Error::Unsupported(format!("unknown fixture kind: {}", name)))
    }
}

fn merge(into: &mut Report, r: Report) {
    for c in r.checks {
        match into.checks.iter_mut().find(|x| x.name == c.name) {
            Some(x) => {
                x.tested += c.tested;
                x.witnesses.extend(c.witnesses);
            }
            None => into.checks.push(c),
        }
    }
}

fn parse_mark(s: &str, c: &ThinCategory) -> Result<Mark> {
    let s = s.trim();
    let (positive, rest) = match s.strip_prefix('-') {
        Some(r) => (false, r),
        None => (true, s.strip_prefix('+').unwrap_or(s)),
    };
    let color = rest.parse::<usize>().map_err(|e| Error::Parse(format!("mark {:?}: {}", s, e)))?;
    if color >= c.len() {
        return Err(Error::Validation(format!("mark {:?} names no simple object", s)));
    }
    Ok(Mark { positive, color })
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Plain => "plain",
        Variant::Bar => "bar",
    }
}

type RibbonData = (hqft_core::hopf::RMatrixFamily, hqft_core::hopf::TwistFamily);

fn build(h: &HopfInput, variant: Variant) -> Result<(hqft_core::hopf::PiCoalgebraData, Option<RibbonData>)> {
    match (&h.r_matrix, &h.ribbon) {
        (Some(r), Some(v)) => {
            let (a, rm, tw) = build_r_theta_from_ribbon(&h.hopf, r, v, variant)?;
            Ok((a, Some((rm, tw))))
        }
        _ => {
            let gl = group_likes(&h.hopf)?;
            let action = HopfAction::conjugation(&h.hopf, &gl);
            Ok((build_a_pi(&h.hopf, &action, variant)?, None))
        }
    }
}

fn push_coalgebra_reports(rep: &mut RunReport, a: &hqft_core::hopf::PiCoalgebraData, rt: Option<&RibbonData>) {
    rep.reports.push(verify_pi_coalgebra(a));
    rep.reports.push(verify_crossed(a));
    if let Some((rm, tw)) = rt {
        rep.reports.push(verify_quasitriangular(a, rm));
        rep.reports.push(verify_ribbon(a, rm, tw));
    }
}

/// Runs a parsed command line. Errors are returned, not printed.
pub fn run(cli: &Cli) -> Result<RunReport> {
    let start = Instant::now();
    let mut rep = RunReport { command: cli.command.name().to_string(), seed: cli.seed, ..Default::default() };
    let runner = Runner { order: cli.cyclotomic_order, positive: cli.dsign.0, seed: cli.seed };
    runner.run(&cli.command, &mut rep)?;
    if cli.timing {
        rep.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(rep)
}

/// Runs, prints and writes the report; returns the process exit code:
/// 0 if every check passed, 1 if some check failed, 2 on an error.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(rep) => {
            print!("{}", rep.render());
            if let Some(path) = &cli.json_report {
                let text = serde_json::to_string_pretty(&rep).expect("report serializes") + "\n";
                if let Err(e) = fs::write(path, text) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return 2;
                }
            }
            if rep.passed() {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}
