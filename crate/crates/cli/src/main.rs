use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use phl::closure::{
    definable_class, enumerate_models, enumerate_models_cached, operator_law_report, parse_extra, ClosureContext,
    ModelClass, ModelUniverse, Operator, SCOPE_NOTE,
};
use phl::corpus::targets::{self, ReportFormat, RunOptions, DEFAULT_SEED};
use phl::corpus::{chains, morphisms, theories};
use phl::homsearch::HomSearch;
use phl::semantics::{Homomorphism, PartialStructure};
use phl::sigma::{acc_probe, classify_components};
use phl::syntax::{parse_document_with, parse_theory, validate_theory, Item, Theory, TheoryMorphism};

#[derive(Parser)]
#[command(name = "phl", version, about = "Partial Horn logic over finite structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a .phl file and report well-formedness of every item.
    Check { file: PathBuf },
    /// Enumerate the models of a theory up to isomorphism.
    Models {
        /// Corpus name (e.g. `pos`, `n-const(3)`) or a .phl file.
        theory: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Directory for universe cache files.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Search homomorphisms between two structures given as JSON.
    Hom {
        source: PathBuf,
        target: PathBuf,
        /// List up to N homomorphisms instead of the first.
        #[arg(long)]
        enumerate: Option<usize>,
        #[arg(long)]
        injective: bool,
        /// Require definedness and relations to be reflected (closed monos).
        #[arg(long)]
        reflecting: bool,
    },
    /// Strongly connected components of the models up to a size bound.
    Sigma {
        theory: String,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply P, S_c, H_loc and their composite to a class of models.
    Closure {
        theory: String,
        /// `all`, `empty`, `models:I,J,..` (universe indices) or
        /// `define:SEQUENTS` (the models satisfying them).
        #[arg(long)]
        class: String,
        #[arg(long)]
        max_size: usize,
        /// Corpus morphism into THEORY whose reducts decide local retractions.
        #[arg(long)]
        rho: Option<String>,
        /// Also check the operator laws on classes sampled with this seed.
        #[arg(long)]
        laws: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Probe an ω-chain for stabilization of its components.
    Acc {
        /// Corpus chain, e.g. `m-lattices` or `presheaf-l(4)`.
        chain: String,
        #[arg(long)]
        horizon: usize,
    },
    /// Run reproduction targets; exits 0 iff all of them match.
    Repro {
        names: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// List corpus theories, chains and targets.
    List {
        #[arg(long)]
        tag: Option<String>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_theory(spec: &str) -> Result<Arc<Theory>> {
    if let Some(t) = theories::by_name(spec) {
        return Ok(t);
    }
    let path = Path::new(spec);
    if path.exists() {
        let text = read(path)?;
        return parse_theory(&text).map(Arc::new).map_err(|e| anyhow!(e.with_file(spec)));
    }
    bail!("unknown theory `{spec}` (not a corpus name or a file)")
}

fn load_structure(path: &Path) -> Result<PartialStructure> {
    let v: Value = serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))?;
    let m = PartialStructure::from_json(&v, |name| theories::by_name(name).map(|t| t.signature.clone()))
        .with_context(|| format!("reading structure {}", path.display()))?;
    m.validate().with_context(|| format!("validating {}", path.display()))?;
    Ok(m)
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn check(file: &Path) -> Result<ExitCode> {
    let text = read(file)?;
    let name = file.display().to_string();
    let doc = parse_document_with(&text, &theories::bundled_all()).map_err(|e| anyhow!(e.with_file(&name)))?;
    let mut ok = true;
    for item in &doc.items {
        match item {
            Item::Theory(t) => {
                let report = validate_theory(t);
                if report.is_ok() {
                    println!("theory {}: ok ({} sorts, {} axioms)", t.name, t.sig().sorts.len(), t.axioms.len());
                } else {
                    ok = false;
                    println!("theory {}:\n{report}", t.name);
                }
            }
            Item::Morphism(m) => println!("morphism {}: {} -> {}: ok", m.name, m.source.name, m.target.name),
            Item::Relative(r) => match r.compile() {
                Ok(t) => {
                    let report = validate_theory(&t);
                    ok &= report.is_ok();
                    println!("relative {} over {}: compiles to {} axioms", r.name, r.base.name, t.axioms.len());
                }
                Err(e) => {
                    ok = false;
                    println!("relative {}: {e}", r.name);
                }
            },
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn universe(theory: &Arc<Theory>, k: usize, cache: Option<&Path>) -> Result<ModelUniverse> {
    Ok(match cache {
        Some(dir) => enumerate_models_cached(theory, k, dir)?,
        None => enumerate_models(theory, k)?,
    })
}

fn models(theory: &str, k: usize, format: Format, cache: Option<&Path>) -> Result<()> {
    let t = load_theory(theory)?;
    let u = universe(&t, k, cache)?;
    match format {
        Format::Json => print_json(&json!({
            "theory": t.name,
            "bound": k,
            "count": u.len(),
            "models": u.models.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })),
        Format::Text => {
            for i in 0..u.len() {
                println!("{}", u.describe(i));
            }
            println!("{} models of {} with carriers of size <= {k}, up to isomorphism", u.len(), t.name);
        }
    }
    Ok(())
}

fn hom(source: &Path, target: &Path, enumerate: Option<usize>, injective: bool, reflecting: bool) -> Result<ExitCode> {
    let (m, n) = (Arc::new(load_structure(source)?), Arc::new(load_structure(target)?));
    if m.sig != n.sig {
        bail!("structures are over different signatures (`{}` and `{}`)", m.signature_name, n.signature_name);
    }
    let mut search = HomSearch::new(&m, &n);
    if injective {
        search = search.injective();
    }
    if reflecting {
        search = search.reflecting();
    }
    let found = search.enumerate(enumerate.unwrap_or(1));
    let homs: Vec<Value> =
        found.into_iter().map(|maps| Homomorphism::new(m.clone(), n.clone(), maps).map(|h| h.to_json())).collect::<Result<_, _>>()?;
    print_json(&json!({ "found": homs.len(), "homomorphisms": homs }));
    Ok(if homs.is_empty() { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn sigma(theory: &str, k: usize, format: Format) -> Result<()> {
    let t = load_theory(theory)?;
    let u = enumerate_models(&t, k)?;
    let family: Vec<PartialStructure> = u.models.iter().map(|m| (**m).clone()).collect();
    let s = classify_components(&family);
    let caveat = format!(
        "bounded count: components among the {} models with carriers of size <= {k}; larger models may add components",
        u.len()
    );
    match format {
        Format::Json => print_json(&json!({ "theory": t.name, "bound": k, "components": s.len(), "sigma": s.to_json(), "caveat": caveat })),
        Format::Text => {
            for (c, members) in s.components.iter().enumerate() {
                let above: Vec<usize> = (0..s.len()).filter(|&d| d != c && s.order.leq[c][d]).collect();
                println!("[{c}] {} ({} models) <= {above:?}", s.order.elements[c], members.len());
            }
            println!("{} components", s.len());
            println!("note: {caveat}");
        }
    }
    Ok(())
}

fn parse_class(ctx: &ClosureContext, spec: &str) -> Result<ModelClass> {
    let u = &ctx.universe;
    Ok(match spec.trim() {
        "all" => ModelClass::full(u),
        "empty" => ModelClass::empty(u),
        s => {
            if let Some(list) = s.strip_prefix("models:") {
                let idx = list
                    .split(',')
                    .map(|x| {
                        let i: usize = x.trim().parse().with_context(|| format!("bad index `{x}`"))?;
                        if i >= u.len() {
                            bail!("index {i} out of range (universe has {} models)", u.len());
                        }
                        Ok(i)
                    })
                    .collect::<Result<Vec<_>>>()?;
                ModelClass::from_indices(u, idx)
            } else if let Some(text) = s.strip_prefix("define:") {
                definable_class(u, &parse_extra(u, text)?)
            } else {
                bail!("class spec must be `all`, `empty`, `models:I,J,..` or `define:SEQUENTS`")
            }
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn closure(theory: &str, class: &str, k: usize, rho: Option<&str>, laws: bool, seed: u64, format: Format) -> Result<()> {
    let t = load_theory(theory)?;
    let u = Arc::new(enumerate_models(&t, k)?);
    let ctx = match rho {
        None => ClosureContext::new(u)?,
        Some(name) => {
            let m: TheoryMorphism = morphisms::by_name(name).ok_or_else(|| anyhow!("unknown morphism `{name}`"))?;
            ClosureContext::with_rho(u, m)?
        }
    };
    let e = parse_class(&ctx, class)?;
    let ops: Vec<(Operator, ModelClass)> = Operator::ALL.iter().map(|&op| (op, ctx.apply(op, &e))).collect();
    let hsp = ctx.hsp_closure(&e);
    let law_report = laws.then(|| operator_law_report(&ctx, seed, 10));
    match format {
        Format::Json => {
            let mut doc = json!({
                "theory": t.name,
                "bound": k,
                "rho": ctx.rho.name,
                "class": e.to_json(),
                "hsp": hsp.to_json(),
                "scope": SCOPE_NOTE,
            });
            for (op, c) in &ops {
                doc[op.name()] = json!(c.indices());
            }
            if let Some(r) = &law_report {
                doc["laws"] = r.to_json();
            }
            print_json(&doc);
        }
        Format::Text => {
            println!("universe: {} models of {} (k = {k}); H_loc rule: {}", ctx.universe.len(), t.name, ctx.rule_name());
            println!("E      = {:?}", e.indices());
            for (op, c) in &ops {
                println!("{:<6} = {:?}", format!("{}(E)", op.name()), c.indices());
            }
            println!("HSP(E) = {:?} ({})", hsp.result.indices(), if hsp.is_fixpoint() { "fixpoint" } else { "NOT a fixpoint" });
            for i in hsp.result.indices() {
                println!("  {}", ctx.universe.describe(i));
            }
            if let Some(r) = &law_report {
                println!("laws: {} classes, {} violations (seed {seed})", r.classes_checked, r.violations.len());
                for v in &r.violations {
                    println!("  {} fails on {:?}", v.law, v.class);
                }
                for v in &r.beyond_bound {
                    println!("  {} needs a product beyond the bound on {:?}", v.law, v.class);
                }
            }
            println!("note: {SCOPE_NOTE}");
        }
    }
    Ok(())
}

fn acc(chain: &str, horizon: usize) -> Result<()> {
    let c = chains::by_name(chain).ok_or_else(|| anyhow!("unknown chain `{chain}`; known: {}", chains::NAMES.join(", ")))?;
    print_json(&acc_probe(&c, horizon)?.to_json());
    Ok(())
}

fn repro(names: Vec<String>, all: bool, format: Format, seed: u64) -> Result<ExitCode> {
    if names.is_empty() && !all {
        bail!("name a target or pass --all; `phl list --tag ...` shows them");
    }
    let names = if all { Vec::new() } else { names };
    let opts = RunOptions { seed };
    let results = targets::run_reproductions(&names, &opts)?;
    let format = match format {
        Format::Text => ReportFormat::Text,
        Format::Json => ReportFormat::Json,
    };
    print!("{}", targets::emit_report(&results, format, seed));
    Ok(if results.iter().all(|r| r.matched()) { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn list(tag: Option<&str>) {
    for e in targets::list_corpus(tag) {
        let tags = if e.tags.is_empty() { String::new() } else { format!(" [{}]", e.tags.join(", ")) };
        println!("{:<7} {}{tags}: {}", e.kind, e.name, e.note);
    }
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file } => check(&file),
        Command::Models { theory, max_size, format, cache } => {
            models(&theory, max_size, format, cache.as_deref()).map(|()| ExitCode::SUCCESS)
        }
        Command::Hom { source, target, enumerate, injective, reflecting } => {
            hom(&source, &target, enumerate, injective, reflecting)
        }
        Command::Sigma { theory, max_size, format } => sigma(&theory, max_size, format).map(|()| ExitCode::SUCCESS),
        Command::Closure { theory, class, max_size, rho, laws, seed, format } => {
            closure(&theory, &class, max_size, rho.as_deref(), laws, seed, format).map(|()| ExitCode::SUCCESS)
        }
        Command::Acc { chain, horizon } => acc(&chain, horizon).map(|()| ExitCode::SUCCESS),
        Command::Repro { names, all, format, seed } => repro(names, all, format, seed),
        Command::List { tag } => {
            list(tag.as_deref());
            Ok(ExitCode::SUCCESS)
        }
    }
}
