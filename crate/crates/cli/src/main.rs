//! `encat`: shapes, law suites and converters on the command line.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use encat::corr::{
    correspondence_iso, from_over_segment, over_segment_iso, right_representable, to_over_segment, CorrespondenceJson,
    OverSegmentJson,
};
use encat::fincat::json::{FinCatJson, FinFunctorJson};
use encat::fincat::FinCat;
use encat::quiv::random::rng;
use encat::quiv::{from_segal, segal_round_trip, tensor, to_segal, Precategory, QuiverJson, RoundTrip, SegalObject};
use encat::shapes::{parse_simplex, shape, shape_to_dot, ShapeJson};
use encat::suite::{self, case_id, case_seed, Exec, Format, Recorder, SuiteConfig, SuiteReport};
use encat::yoneda::random::random_presheaf;
use encat::yoneda::{
    completeness_check, completion, fold_algebra_check, fully_faithful_check, representable_is_free, yoneda_lemma_check, yoneda_map,
    yoneda_presheaf, Presheaves,
};

#[derive(Parser)]
#[command(name = "encat", version, about = "Finite models of enriched categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Render the shape poset of a simplex.
    Shape {
        /// A simplex, e.g. "w=0000; phi=[0,3]".
        simplex: String,
        #[arg(long, conflicts_with_all = ["json", "format"])]
        dot: bool,
        #[arg(long, conflicts_with = "format")]
        json: bool,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one law suite.
    Laws {
        #[arg(value_parser = suite::SUITES)]
        suite: String,
        /// Restrict to these groups of the suite.
        #[arg(long = "group")]
        groups: Vec<String>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run every suite.
    Suite {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Convert between precategories and Segal objects.
    Segal {
        #[command(subcommand)]
        dir: SegalDir,
    },
    /// Convert correspondences, or extract a represented functor.
    Corr {
        #[command(subcommand)]
        op: CorrOp,
    },
    /// The Yoneda lemma and embedding on a category from a file.
    Yoneda {
        #[command(subcommand)]
        op: YonedaOp,
    },
    /// The completion of a category from a file.
    Complete {
        input: PathBuf,
        #[arg(long, env = "ENCAT_CAP", default_value_t = 2_000_000)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fold bimodules over two monoids into left modules.
    FoldAlg {
        /// Multiplication table of the left monoid, unit first, as JSON.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 2)]
        carrier: usize,
        #[arg(long, env = "ENCAT_CAP", default_value_t = 2_000_000)]
        cap: usize,
    },
    /// Tensor two quivers over the same objects.
    Tensor {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExecArg {
    Seq,
    Par,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// Largest number of bits of a word.
    #[arg(long, default_value_t = 4)]
    max_word: usize,
    /// Largest number of objects of a random base.
    #[arg(long, default_value_t = 3)]
    size: usize,
    #[arg(long, default_value_t = 3)]
    max_fiber: usize,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Reports are JSON; `dot` is rejected.
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long, value_enum, default_value = "par")]
    exec: ExecArg,
    #[arg(long, env = "ENCAT_CAP", default_value_t = 2_000_000)]
    cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl RunArgs {
    fn config(&self) -> Result<SuiteConfig, String> {
        if matches!(self.format, FormatArg::Dot) {
            return Err("suite reports are JSON only".into());
        }
        if self.cap == 0 || self.size == 0 || self.max_fiber == 0 {
            return Err("caps must be positive".into());
        }
        Ok(SuiteConfig {
            max_word: self.max_word,
            max_dim: self.max_dim,
            max_size: self.size,
            max_fiber: self.max_fiber,
            seed: self.seed,
            cases: self.cases,
            format: Format::Json,
            cap: self.cap,
        })
    }

    fn exec(&self) -> Exec {
        match self.exec {
            ExecArg::Seq => Exec::Sequential,
            ExecArg::Par => Exec::Parallel,
        }
    }
}

#[derive(Subcommand)]
enum SegalDir {
    /// Category JSON to Segal JSON.
    To {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        level: usize,
        #[arg(long)]
        roundtrip: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Segal JSON to category JSON.
    From {
        input: PathBuf,
        #[arg(long)]
        roundtrip: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CorrOp {
    /// Correspondence JSON to over-segment JSON.
    ToSeg {
        input: PathBuf,
        #[arg(long)]
        roundtrip: bool,
        #[arg(long, env = "ENCAT_CAP", default_value_t = 2_000_000)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Over-segment JSON to correspondence JSON.
    FromSeg {
        input: PathBuf,
        #[arg(long)]
        roundtrip: bool,
        #[arg(long, env = "ENCAT_CAP", default_value_t = 2_000_000)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The functor represented by a correspondence, if any.
    Represent {
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum YonedaOp {
    /// Check the lemma on seeded presheaves over a category from a file.
    Check {
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        cases: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_fiber: usize,
        #[arg(long, env = "ENCAT_CAP", default_value_t = 2_000_000)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A command's outcome: laws held, or a law failed.
enum Outcome {
    Pass,
    Fail,
}

type Run = Result<Outcome, String>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Run {
    match cmd {
        Command::Shape { simplex, dot, json: _, format, out } => {
            let s = parse_simplex(&simplex).map_err(|e| e.to_string())?;
            let p = shape(&s).map_err(|e| e.to_string())?;
            let text = if dot || matches!(format, Some(FormatArg::Dot)) {
                shape_to_dot(&p, "shape")
            } else {
                pretty(&ShapeJson::from_shape(&p))
            };
            emit(&out, &text)?;
            Ok(Outcome::Pass)
        }
        Command::Laws { suite, groups, run } => {
            let cfg = run.config()?;
            let only: Vec<&str> = groups.iter().map(String::as_str).collect();
            let start = Instant::now();
            let report = suite::run_groups(&suite, &only, &cfg, run.exec())
                .ok_or_else(|| format!("unknown group for suite {suite}: {}", groups.join(", ")))?;
            report_out(&report, &run.out, start)
        }
        Command::Suite { run } => {
            let cfg = run.config()?;
            let start = Instant::now();
            let report = suite::run_all(&cfg, run.exec());
            report_out(&report, &run.out, start)
        }
        Command::Segal { dir } => segal(dir),
        Command::Corr { op } => corr(op),
        Command::Yoneda { op: YonedaOp::Check { input, cases, seed, max_fiber, cap, out } } => {
            let p = read_category(&input)?;
            let ps = Presheaves::new(Precategory::from_category(&p).map_err(|e| e.to_string())?);
            let start = Instant::now();
            let mut rec = Recorder::default();
            let n = ps.n();
            let ys: Vec<_> = (0..n).map(|x| yoneda_presheaf(&ps, x)).collect();
            let ff = fully_faithful_check(&ps.base, &ys, |a, b, e| yoneda_map(&ps, a, b, e), cap);
            rec.outcome("yoneda.fully_faithful", "embedding", ff, || json!({}));
            for x in 0..n {
                rec.outcome("yoneda.representable_free", &case_id(x), representable_is_free(&ps, x, cap), || json!({ "object": x }));
            }
            for i in 0..cases {
                let s = case_seed(seed, "yoneda.check", i);
                let f = random_presheaf(&ps, &mut rng(s), max_fiber);
                for x in 0..n {
                    let r = yoneda_lemma_check(&ps, x, &f, cap).map(|y| y.passed());
                    rec.outcome("yoneda.lemma", &format!("{}.{x}", case_id(i)), r, || json!({ "seed": s, "object": x }));
                }
            }
            let cfg = SuiteConfig { seed, cases, max_fiber, cap, ..SuiteConfig::default() };
            let report = SuiteReport { suite: "yoneda-check".into(), config: cfg, laws: rec.into_laws() };
            report_out(&report, &out, start)
        }
        Command::Complete { input, cap, out } => {
            let c = read_category(&input)?;
            let p = Precategory::from_category(&c).map_err(|e| e.to_string())?;
            let done = completion(&p, cap).map_err(|e| e.to_string())?;
            let complete = completeness_check(&done.precat).map_err(|e| e.to_string())?;
            let ff = done.unit_fully_faithful(&p);
            let under = done.precat.underlying_category().map_err(|e| e.to_string())?;
            let classes: serde_json::Map<String, serde_json::Value> =
                c.object_names().iter().zip(&done.classes).map(|(o, &k)| (o.clone(), json!(k))).collect();
            let text = pretty(&json!({
                "objects": done.precat.n(),
                "classes": classes,
                "complete": complete,
                "unit_fully_faithful": ff,
                "category": FinCatJson::from_cat(&under),
            }));
            emit(&out, &text)?;
            Ok(if complete && ff { Outcome::Pass } else { Outcome::Fail })
        }
        Command::FoldAlg { left, right, carrier, cap } => {
            let a = monoid(&left, "--left")?;
            let b = monoid(&right, "--right")?;
            let r = fold_algebra_check(&a, &b, carrier, cap).map_err(|e| e.to_string())?;
            println!("{}", pretty(&r));
            Ok(if r.passed() { Outcome::Pass } else { Outcome::Fail })
        }
        Command::Tensor { a, b, out } => {
            let qa: QuiverJson = read_json(&a)?;
            let qa = qa.to_quiver().map_err(|e| format!("{}: {e}", a.display()))?;
            let qb: QuiverJson = read_json(&b)?;
            let qb = qb.to_quiver_over(&qa.amb).map_err(|e| format!("{}: {e}", b.display()))?;
            let t = tensor(&qa, &qb).map_err(|e| e.to_string())?;
            emit(&out, &pretty(&QuiverJson::from_quiver(&t.quiver)))?;
            Ok(Outcome::Pass)
        }
    }
}

fn segal(dir: SegalDir) -> Run {
    match dir {
        SegalDir::To { input, level, roundtrip, out } => {
            let c = read_category(&input)?;
            let p = Precategory::from_category(&c).map_err(|e| e.to_string())?;
            let s = to_segal(&p, level).map_err(|e| e.to_string())?;
            emit(&out, &pretty(&s))?;
            if roundtrip {
                return round_trip_result(segal_round_trip(&p, level).map_err(|e| e.to_string())?);
            }
            Ok(Outcome::Pass)
        }
        SegalDir::From { input, roundtrip, out } => {
            let s: SegalObject = read_json(&input)?;
            let p = from_segal(&s).map_err(|e| e.to_string())?;
            let c = p.underlying_category().map_err(|e| e.to_string())?;
            emit(&out, &pretty(&FinCatJson::from_cat(&c)))?;
            if roundtrip {
                let again = to_segal(&p, s.level).map_err(|e| e.to_string())?;
                let rt = segal_round_trip(&p, s.level).map_err(|e| e.to_string())?;
                if again.sizes != s.sizes {
                    eprintln!("roundtrip: level sizes differ");
                    return Ok(Outcome::Fail);
                }
                return round_trip_result(rt);
            }
            Ok(Outcome::Pass)
        }
    }
}

fn round_trip_result(rt: RoundTrip) -> Run {
    let ok = rt == RoundTrip { precategory: true, segal: true };
    eprintln!("roundtrip: {}", if ok { "ok" } else { "FAILED" });
    Ok(if ok { Outcome::Pass } else { Outcome::Fail })
}

fn corr(op: CorrOp) -> Run {
    match op {
        CorrOp::ToSeg { input, roundtrip, cap, out } => {
            let j: CorrespondenceJson = read_json(&input)?;
            let k = j.to_correspondence().map_err(|e| format!("{}: {e}", input.display()))?;
            let o = to_over_segment(&k).map_err(|e| e.to_string())?;
            emit(&out, &pretty(&OverSegmentJson::from_over_segment(&o)))?;
            if roundtrip {
                let back = from_over_segment(&o).map_err(|e| e.to_string())?;
                let ok = correspondence_iso(&k, &back, cap).map_err(|e| e.to_string())?;
                return round_trip_result(RoundTrip { precategory: ok, segal: ok });
            }
            Ok(Outcome::Pass)
        }
        CorrOp::FromSeg { input, roundtrip, cap, out } => {
            let j: OverSegmentJson = read_json(&input)?;
            let o = j.to_over_segment().map_err(|e| format!("{}: {e}", input.display()))?;
            let k = from_over_segment(&o).map_err(|e| e.to_string())?;
            emit(&out, &pretty(&CorrespondenceJson::from_correspondence(&k).map_err(|e| e.to_string())?))?;
            if roundtrip {
                let again = to_over_segment(&k).map_err(|e| e.to_string())?;
                let ok = over_segment_iso(&o, &again, cap).map_err(|e| e.to_string())?.is_some();
                return round_trip_result(RoundTrip { precategory: ok, segal: ok });
            }
            Ok(Outcome::Pass)
        }
        CorrOp::Represent { input, out } => {
            let j: CorrespondenceJson = read_json(&input)?;
            let k = j.to_correspondence().map_err(|e| format!("{}: {e}", input.display()))?;
            let text = match right_representable(&k).map_err(|e| e.to_string())? {
                Ok(r) => {
                    let f = r.to_functor(&k).map_err(|e| e.to_string())?;
                    pretty(&json!({ "representable": true, "functor": FinFunctorJson::from_functor(&f), "universal": r.universal }))
                }
                Err(d) => {
                    let name = &j.target.objects[d];
                    pretty(&json!({ "representable": false, "object": name }))
                }
            };
            emit(&out, &text)?;
            Ok(Outcome::Pass)
        }
    }
}

fn report_out(report: &SuiteReport, out: &Option<PathBuf>, start: Instant) -> Run {
    emit(out, &report.to_json())?;
    let failed: Vec<&str> = report.laws.iter().filter(|l| !l.ok()).map(|l| l.law.as_str()).collect();
    for l in &failed {
        eprintln!("FAIL {l}");
    }
    eprintln!("wall time: {:.2}s", start.elapsed().as_secs_f64());
    Ok(if failed.is_empty() { Outcome::Pass } else { Outcome::Fail })
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn read_category(path: &PathBuf) -> Result<FinCat, String> {
    let j: FinCatJson = read_json(path)?;
    j.to_cat().map_err(|e| format!("{}: {e}", path.display()))
}

fn monoid(table: &str, flag: &str) -> Result<Precategory, String> {
    let t: Vec<Vec<usize>> = serde_json::from_str(table).map_err(|e| format!("{flag}: {e}"))?;
    let m = FinCat::monoid(&t, 0).map_err(|e| format!("{flag}: {e}"))?;
    Precategory::from_category(&m).map_err(|e| format!("{flag}: {e}"))
}
