use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use twocat::category::{RawCategory, RawFunctor};
use twocat::comma::{pullback_of_flavor, verify_lax_pullback, Flavor};
use twocat::fib::{chevalley_check, is_discrete_fibration, is_discrete_fibration_span, is_discrete_opfibration, is_fibration, is_opfibration};
use twocat::kan::{colimit_in, lan_pointwise, ran_pointwise, verify_col_rec, verify_pointwise_left_extension, weighted_colimit};
use twocat::omega::{all_cosieves, build_omega, classify_cosieve, exponential_check, implication_table, product_classifier};
use twocat::presheaf::Presheaf;
use twocat::span::{classify, dfib_to_profunctor, dfib_transpose, span_compose, Span};
use twocat::suite::{run_suite, SuiteConfig};
use twocat::yoneda::{chi, is_admissible, YonedaContext};
use twocat::{glob, probes, Budget, Error, FinCategory, FinFunctor, Report, Verdict};

#[derive(Parser)]
#[command(name = "twocat", version, about = "Exhaustive checks of finite 2-categorical universal properties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value_t = 2)]
    lambda: usize,
    #[arg(long = "trunc", default_value_t = 2)]
    truncation: usize,
    #[arg(long, default_value = "standard")]
    probes: String,
    #[arg(long, default_value_t = twocat::budget::DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

impl Common {
    fn budget(&self) -> Budget {
        Budget::with_cap(self.cap)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a named check suite and emit a JSON report.
    Run {
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Category files (one category or an array) added to the corpus.
        #[arg(long)]
        corpus: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the comma, pseudo or strict pullback of a cospan {"f", "g"}.
    Comma {
        #[arg(long)]
        cospan: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Lax)]
        flavor: FlavorArg,
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Fibration checks on a functor.
    Fib {
        #[command(subcommand)]
        op: FibOp,
    },
    /// Spans {"left", "right"} and discrete opfibrations.
    Span {
        #[command(subcommand)]
        op: SpanOp,
    },
    /// Kan extensions and colimits in finite categories.
    Kan {
        #[command(subcommand)]
        op: KanOp,
    },
    Yoneda {
        #[command(subcommand)]
        op: YonedaOp,
    },
    Omega {
        #[command(subcommand)]
        op: OmegaOp,
    },
    /// Higher spans of finite-set categories.
    Glob {
        #[command(subcommand)]
        op: GlobOp,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Lax,
    Pseudo,
    Strict,
}

#[derive(Subcommand)]
enum FibOp {
    Check {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        chevalley: bool,
        #[arg(long)]
        discrete: bool,
        #[arg(long, default_value_t = twocat::budget::DEFAULT_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum SpanOp {
    Compose {
        first: PathBuf,
        second: PathBuf,
    },
    /// Classifying map of a discrete opfibration into Ω_λ.
    Classify {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long, default_value_t = 2)]
        lambda: usize,
    },
    /// Move B across a discrete fibration span from A×B to C.
    Transpose {
        #[arg(long)]
        span: PathBuf,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Subcommand)]
enum KanOp {
    /// Pointwise left extension of --data f.json along --along g.json.
    Lan(ExtArgs),
    Ran(ExtArgs),
    /// Colimit of a diagram.
    Colim {
        #[arg(long)]
        data: PathBuf,
    },
    /// Colimit of a diagram weighted by {"sizes", "action"} on its domain.
    Wcolim {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        weight: PathBuf,
    },
}

#[derive(Args)]
struct ExtArgs {
    #[arg(long)]
    data: PathBuf,
    #[arg(long)]
    along: PathBuf,
}

#[derive(Subcommand)]
enum YonedaOp {
    Admissible {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long, default_value_t = 2)]
        lambda: usize,
    },
    /// Size of PSh(A) = [Aᵒᵖ, Ω_λ].
    Psh {
        #[arg(long)]
        category: PathBuf,
        #[arg(long, default_value_t = 2)]
        lambda: usize,
    },
    Chi {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long, default_value_t = 2)]
        lambda: usize,
    },
    Axioms {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand)]
enum OmegaOp {
    Build {
        #[arg(long, default_value_t = 2)]
        lambda: usize,
    },
    Cosieves {
        #[arg(long)]
        category: PathBuf,
    },
    CcCheck {
        #[arg(long, default_value_t = 2)]
        lambda: usize,
    },
}

#[derive(Subcommand)]
enum GlobOp {
    /// Level sizes of Sp(Ω_λ) up to the truncation.
    Sp(GlobArgs),
    /// Level sizes of ΣSp(Ω_λ), and whether D undoes Σ.
    Sigma(GlobArgs),
    /// Pad the constant n-span at a set of size --size by k levels.
    Ik {
        #[command(flatten)]
        args: GlobArgs,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        size: usize,
    },
    Check {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct GlobArgs {
    #[arg(long, default_value_t = 2)]
    lambda: usize,
    #[arg(long = "trunc", default_value_t = 2)]
    truncation: usize,
}

/// Reads categories and functors, sharing equal categories so that
/// functors loaded separately compose.
#[derive(Default)]
struct Loader {
    seen: Vec<(RawCategory, Arc<FinCategory>)>,
}

impl Loader {
    fn category(&mut self, raw: &RawCategory) -> Result<Arc<FinCategory>> {
        if let Some((_, c)) = self.seen.iter().find(|(r, _)| r == raw) {
            return Ok(c.clone());
        }
        let c = Arc::new(FinCategory::from_raw(raw)?);
        self.seen.push((raw.clone(), c.clone()));
        Ok(c)
    }

    fn functor(&mut self, raw: &RawFunctor) -> Result<FinFunctor> {
        let (dom, cod) = (self.category(&raw.dom)?, self.category(&raw.cod)?);
        Ok(FinFunctor::from_raw_in(raw, dom, cod)?)
    }
}

fn read(path: &Path) -> Result<String> {
    if !path.exists() {
        return Err(Error::MissingCorpus(path.display().to_string()).into());
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_functor(path: &Path, loader: &mut Loader) -> Result<FinFunctor> {
    loader.functor(&read_json(path)?)
}

fn load_category(path: &Path) -> Result<Arc<FinCategory>> {
    Ok(Arc::new(FinCategory::from_raw(&read_json(path)?)?))
}

/// A file holds one category or an array of them.
fn load_corpus(path: &Path) -> Result<Vec<Arc<FinCategory>>> {
    let value: Value = serde_json::from_str(&read(path)?)?;
    let raws: Vec<RawCategory> = match value {
        Value::Array(_) => serde_json::from_value(value)?,
        other => vec![serde_json::from_value(other)?],
    };
    raws.iter().map(|r| Ok(Arc::new(FinCategory::from_raw(r)?))).collect()
}

#[derive(Deserialize)]
struct RawCospan {
    f: RawFunctor,
    g: RawFunctor,
}

#[derive(Deserialize)]
struct RawSpan {
    left: RawFunctor,
    right: RawFunctor,
}

#[derive(Deserialize)]
struct RawWeight {
    sizes: Vec<usize>,
    action: Vec<Vec<usize>>,
}

fn load_span(path: &Path, loader: &mut Loader) -> Result<Span> {
    let raw: RawSpan = read_json(path)?;
    Ok(Span::new(loader.functor(&raw.left)?, loader.functor(&raw.right)?)?)
}

fn span_json(s: &Span) -> Value {
    json!({ "left": s.left.to_raw(), "right": s.right.to_raw() })
}

fn config(common: &Common, corpus: &[PathBuf]) -> Result<SuiteConfig> {
    let mut extra = Vec::new();
    for p in corpus {
        extra.extend(load_corpus(p)?);
    }
    Ok(SuiteConfig {
        lambda: common.lambda,
        truncation: common.truncation,
        probes: common.probes.clone(),
        cap: common.cap,
        seed: common.seed,
        corpus: extra,
    })
}

/// Runs a suite, prints or writes the report, and returns whether nothing failed.
fn report_suite(name: &str, cfg: &SuiteConfig, out: Option<&Path>) -> Result<bool> {
    let report = run_suite(name, cfg)?;
    eprintln!("suite {name} seed {}", cfg.seed);
    let text = serde_json::to_string_pretty(&json!({ "suite": name, "seed": cfg.seed, "checks": report.checks }))?;
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => println!("{text}"),
    }
    summarize(&report);
    Ok(report.passed())
}

fn summarize(report: &Report) {
    eprintln!(
        "{} pass, {} fail, {} inconclusive",
        report.count(Verdict::Pass),
        report.count(Verdict::Fail),
        report.count(Verdict::Inconclusive)
    );
    for c in report.failures() {
        eprintln!("FAIL {} {}", c.id, c.witness.as_deref().unwrap_or(""));
    }
}

fn emit(v: Value) -> Result<bool> {
    println!("{}", serde_json::to_string_pretty(&v)?);
    Ok(true)
}

fn execute(cli: Cli) -> Result<bool> {
    let mut loader = Loader::default();
    match cli.command {
        Command::Run { suite, common, corpus, out } => report_suite(&suite, &config(&common, &corpus)?, out.as_deref()),
        Command::Comma { cospan, flavor, verify, common } => {
            let raw: RawCospan = read_json(&cospan)?;
            let (f, g) = (loader.functor(&raw.f)?, loader.functor(&raw.g)?);
            let flavor = match flavor {
                FlavorArg::Lax => Flavor::Lax,
                FlavorArg::Pseudo => Flavor::Pseudo,
                FlavorArg::Strict => Flavor::Strict,
            };
            let sq = pullback_of_flavor(&f, &g, flavor)?;
            let mut out = json!({ "apex": sq.apex.to_raw(), "p": sq.p.to_raw(), "q": sq.q.to_raw() });
            let mut ok = true;
            if verify {
                let report = verify_lax_pullback(&sq, &probes::by_name(&common.probes)?, &common.budget())?;
                ok = report.passed();
                out["checks"] = serde_json::to_value(&report.checks)?;
            }
            emit(out)?;
            Ok(ok)
        }
        Command::Fib { op: FibOp::Check { functor, chevalley, discrete, cap } } => {
            let f = load_functor(&functor, &mut loader)?;
            let mut out = json!({ "fibration": is_fibration(&f), "opfibration": is_opfibration(&f) });
            let mut ok = true;
            if chevalley {
                let rep = chevalley_check(&f, &Budget::with_cap(cap))?;
                ok = rep.verdict != Verdict::Fail;
                out["chevalley"] = json!(rep.verdict);
            }
            if discrete {
                out["discrete_fibration"] = json!(is_discrete_fibration(&f));
                out["discrete_opfibration"] = json!(is_discrete_opfibration(&f));
            }
            emit(out)?;
            Ok(ok)
        }
        Command::Span { op } => match op {
            SpanOp::Compose { first, second } => {
                let (s1, s2) = (load_span(&first, &mut loader)?, load_span(&second, &mut loader)?);
                emit(span_json(&span_compose(&s1, &s2)?))
            }
            SpanOp::Classify { functor, lambda } => {
                let p = load_functor(&functor, &mut loader)?;
                let ctx = build_omega(lambda)?;
                let f = classify(&p, &ctx)?;
                let sizes: Vec<usize> = f.obj_map.iter().map(|&o| ctx.size(o)).collect();
                emit(json!({ "classifying_map": f.to_raw(), "fibre_sizes": sizes }))
            }
            SpanOp::Transpose { span, a, b } => {
                let s = load_span(&span, &mut loader)?;
                let (a, b) = (loader.category(&read_json(&a)?)?, loader.category(&read_json(&b)?)?);
                let Some(cert) = is_discrete_fibration_span(&s.left, &s.right) else {
                    bail!(Error::BadConfig("span is not a two-sided discrete fibration".into()));
                };
                let t = dfib_transpose(&cert, &a, &b)?;
                let sizes = dfib_to_profunctor(&t).sizes;
                emit(json!({ "left": t.d().to_raw(), "right": t.c().to_raw(), "sizes": sizes }))
            }
        },
        Command::Kan { op } => {
            let b = Budget::default();
            match op {
                KanOp::Lan(args) => {
                    let (f, g) = (load_functor(&args.data, &mut loader)?, load_functor(&args.along, &mut loader)?);
                    let cell = lan_pointwise(&g, &f, &b)?;
                    let pointwise = verify_pointwise_left_extension(&cell, &b)?.holds();
                    emit(json!({ "extension": cell.h.to_raw(), "unit": cell.phi.to_raw(), "pointwise": pointwise }))?;
                    Ok(pointwise)
                }
                KanOp::Ran(args) => {
                    let (f, g) = (load_functor(&args.data, &mut loader)?, load_functor(&args.along, &mut loader)?);
                    let (h, counit) = ran_pointwise(&g, &f, &b)?;
                    emit(json!({ "extension": h.to_raw(), "counit": counit.to_raw() }))
                }
                KanOp::Colim { data } => {
                    let d = load_functor(&data, &mut loader)?;
                    let nadir = colimit_in(&d, &b)?.map(|c| d.cod.object_id(c.nadir).to_string());
                    emit(json!({ "colimit": nadir }))
                }
                KanOp::Wcolim { data, weight } => {
                    let f = load_functor(&data, &mut loader)?;
                    let w: RawWeight = read_json(&weight)?;
                    let i = Presheaf::new(f.dom.clone(), w.sizes, w.action)?;
                    let wc = weighted_colimit(&i, &f, &b)?;
                    let col_rec = verify_col_rec(&i, &f, &wc, &b)?;
                    emit(json!({ "colimit": f.cod.object_id(wc.object()), "col_rec": col_rec }))?;
                    Ok(col_rec)
                }
            }
        }
        Command::Yoneda { op } => {
            let b = Budget::default();
            match op {
                YonedaOp::Admissible { functor, lambda } => {
                    let f = load_functor(&functor, &mut loader)?;
                    let ctx = YonedaContext::new(lambda)?;
                    let cert = is_admissible(&f, &ctx);
                    emit(json!({ "admissible": cert.is_some(), "hom_sizes": cert.map(|c| c.homs) }))
                }
                YonedaOp::Psh { category, lambda } => {
                    let a = load_category(&category)?;
                    let ctx = YonedaContext::new(lambda)?;
                    let psh = ctx.psh(&a, &b)?;
                    emit(json!({
                        "objects": psh.category.num_objects(),
                        "morphisms": psh.category.num_morphisms(),
                    }))
                }
                YonedaOp::Chi { functor, lambda } => {
                    let f = load_functor(&functor, &mut loader)?;
                    let ctx = YonedaContext::with_bases(lambda, &[f.dom.clone(), f.cod.clone()], &b)?;
                    let c = chi(&f, &ctx, &b)?;
                    emit(json!({ "invertible": c.is_invertible(), "fully_faithful": f.is_fully_faithful() }))
                }
                YonedaOp::Axioms { common } => report_suite("yoneda-axioms", &config(&common, &[])?, None),
            }
        }
        Command::Omega { op } => match op {
            OmegaOp::Build { lambda } => {
                let ctx = build_omega(lambda)?;
                emit(json!({ "omega": ctx.omega.to_raw(), "tau": ctx.tau.to_raw() }))
            }
            OmegaOp::Cosieves { category } => {
                let x = load_category(&category)?;
                let ctx = build_omega(2)?;
                let mut out = Vec::new();
                for p in all_cosieves(&x) {
                    let f = classify_cosieve(&p, &ctx)?;
                    let members: Vec<&str> = p.obj_map.iter().map(|&o| x.object_id(o)).collect();
                    let values: Vec<usize> = f.obj_map.iter().map(|&o| ctx.size(o)).collect();
                    out.push(json!({ "objects": members, "characteristic": values }));
                }
                emit(Value::Array(out))
            }
            OmegaOp::CcCheck { lambda } => {
                let b = Budget::default();
                let ctx = build_omega(lambda)?;
                let prod = match product_classifier(&ctx, &b) {
                    Ok(p) => p,
                    Err(Error::MissingProduct(x, y)) => {
                        emit(json!({ "product_classifier": "fail", "witness": format!("({x},{y})") }))?;
                        return Ok(false);
                    }
                    Err(e) => return Err(e.into()),
                };
                let mut exponentials = true;
                for x in 0..ctx.omega.num_objects() {
                    exponentials &= exponential_check(&ctx, &prod, x, &b).is_ok();
                }
                let table = implication_table(&ctx, &prod, &b)?;
                emit(json!({ "product_classifier": "pass", "exponentials": exponentials, "implication": table }))?;
                Ok(exponentials)
            }
        },
        Command::Glob { op } => {
            let b = Budget::default();
            let levels = |x: &glob::TruncatedGlobularCategory| -> Value {
                x.levels.iter().map(|c| json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms() })).collect()
            };
            match op {
                GlobOp::Sp(args) => {
                    let ctx = build_omega(args.lambda)?;
                    let sp = glob::sp(&ctx.omega, args.truncation, &b)?;
                    emit(json!({ "levels": levels(&sp.globular) }))
                }
                GlobOp::Sigma(args) => {
                    let ctx = build_omega(args.lambda)?;
                    let sp = glob::sp(&ctx.omega, args.truncation, &b)?;
                    let s = glob::sigma(&sp.globular);
                    let restored = glob::d_shift(&s)? == sp.globular;
                    emit(json!({ "levels": levels(&s), "d_sigma_identity": restored }))?;
                    Ok(restored)
                }
                GlobOp::Ik { args, k, size } => {
                    let ctx = build_omega(args.lambda)?;
                    let (Some(value), Some(one)) = (ctx.object_of_size(size), ctx.object_of_size(1)) else {
                        bail!(Error::BadConfig(format!("no set of size {size} below λ = {}", args.lambda)));
                    };
                    let n = args.truncation;
                    let x = glob::NSpan::new(n, FinFunctor::constant(glob::span_shape(n), ctx.omega.clone(), value))?;
                    let padded = glob::i_k_pad(&x, k, one)?;
                    let shape = &padded.diagram.dom;
                    let sizes: Vec<usize> = (0..shape.num_objects()).map(|o| ctx.size(padded.diagram.ob(o))).collect();
                    emit(json!({ "level": padded.level, "sizes": sizes }))
                }
                GlobOp::Check { common } => report_suite("glob", &config(&common, &[])?, None),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let kind = match e.downcast_ref::<Error>() {
                Some(Error::BadConfig(_)) => "BadConfig",
                Some(Error::MissingCorpus(_)) => "MissingCorpus",
                _ => "error",
            };
            eprintln!("{kind}: {e:#}");
            ExitCode::from(2)
        }
    }
}
