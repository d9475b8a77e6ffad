use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use gradcat::bifunctor::{bigraded_product, from_left, from_product, from_right, to_left, to_product, to_right, Sesquifunctor};
use gradcat::bigraded::{self, is_square, BigradedCat};
use gradcat::duoidal::{braided_duoidal, c_star, check_duoidal, compute_sigma_tau, flip_test, is_vgraded_square, DuoidalData, Twisted};
use gradcat::envelope::{build_envelope, check_envelope};
use gradcat::fincat::check_fincat;
use gradcat::format::{parse, to_json, Loaded};
use gradcat::funcat::{build_functor_category, FunctorCat, FunctorCatSpec, Side};
use gradcat::graded::{check_graded, check_graded_functor, GradedCat, GradedFunctor, Limits};
use gradcat::modules::{check_module, identity_module, is_fully_faithful, yoneda_check, yoneda_embedding, YonedaSetup};
use gradcat::monoidal::check_monoidal;
use gradcat::{builtins, CheckReport, Error};

#[derive(Parser)]
#[command(name = "gradcat", version, about = "Construct and check finite graded categories")]
struct Cli {
    /// Cap on the number of objects of any constructed category.
    #[arg(long, global = true, default_value_t = 64)]
    max_objects: usize,
    /// Cap on the size of any single graded hom-set.
    #[arg(long, global = true, default_value_t = 4096)]
    max_hom: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    /// Left graded source; the result is right graded.
    Left,
    /// Right graded source; the result is left graded.
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Corner {
    /// `A ⊠ B → C`
    Product,
    /// `A → [B, C]`
    Left,
    /// `B → [A, C]`
    Right,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every law of the structure in a file.
    Check { file: PathBuf },
    /// Build the graded functor category `[source, target]`.
    FunctorCat {
        #[arg(long)]
        source: String,
        /// A bigraded file, or a graded one regarded as bigraded on the matching side.
        #[arg(long)]
        target: String,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build the bigraded product of a left and a right graded category.
    Product {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Move a bifunctor between its three functor presentations.
    Curry {
        #[arg(long, value_enum)]
        from: Corner,
        #[arg(long, value_enum)]
        to: Corner,
        /// Left graded `A`.
        #[arg(long)]
        a: String,
        /// Right graded `B`.
        #[arg(long)]
        b: String,
        /// Bigraded target `C`.
        #[arg(long)]
        c: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Census of the graded Yoneda lemma for a right graded category.
    Yoneda {
        /// A built-in base; alone, selects the base regarded as right graded over itself.
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        category: Option<String>,
    },
    /// Decide a `V`-graded square and its counterpart in `C_⋆`.
    DuoidalSquare {
        #[arg(long)]
        category: String,
        /// `f,g,phi,phi2` element ids.
        #[arg(long, value_delimiter = ',', num_args = 4)]
        quad: Vec<String>,
        /// Duoidal data file or built-in base; defaults to the braided structure of the category's base.
        #[arg(long)]
        duoidal: Option<String>,
    },
    /// Search for a square whose flip is not a square.
    FlipTest {
        /// Duoidal data file or built-in braided base.
        #[arg(long)]
        duoidal: String,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Build the enveloping actegory and check its copower properties.
    Envelope {
        #[arg(long)]
        category: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit a built-in structure; `list` prints the names.
    Examples {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Err(Error),
    Laws,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Err(e)
    }
}

type Outcome = Result<(), Failure>;

fn parse_err(path: &str, msg: impl Into<String>) -> Error {
    Error::Parse { path: path.into(), msg: msg.into() }
}

fn load(arg: &str) -> Result<Loaded, Error> {
    let p = Path::new(arg);
    if p.exists() {
        let text = std::fs::read_to_string(p).map_err(|e| parse_err(arg, e.to_string()))?;
        return parse(&text);
    }
    if let Some(c) = builtins::graded(arg) {
        return Ok(Loaded::Graded(Arc::new(c)));
    }
    if let Some(v) = builtins::base(arg) {
        return Ok(Loaded::Monoidal(Arc::new(v)));
    }
    Err(parse_err(arg, "neither a file nor a built-in name"))
}

fn load_graded(arg: &str) -> Result<Arc<GradedCat>, Error> {
    match load(arg)? {
        Loaded::Graded(c) => Ok(c),
        other => Err(parse_err(arg, format!("expected a graded category, found {}", other.kind()))),
    }
}

fn load_duoidal(arg: &str) -> Result<DuoidalData, Error> {
    match load(arg)? {
        Loaded::Duoidal(d) => Ok(d),
        Loaded::Monoidal(v) => braided_duoidal(v),
        other => Err(parse_err(arg, format!("expected duoidal data or a braided base, found {}", other.kind()))),
    }
}

fn write(out: &Path, l: &Loaded) -> Result<(), Error> {
    std::fs::write(out, to_json(l)).map_err(|e| parse_err(&out.display().to_string(), e.to_string()))
}

fn report(r: &CheckReport) -> Outcome {
    println!("{r}");
    if r.ok() {
        Ok(())
    } else {
        Err(Failure::Laws)
    }
}

fn check(file: &Path) -> Outcome {
    let l = load(&file.display().to_string())?;
    let r = match &l {
        Loaded::FinCat(c) => check_fincat(c),
        Loaded::Monoidal(v) => check_monoidal(v),
        Loaded::Graded(c) => check_graded(c),
        Loaded::Bigraded(c) => check_graded(&c.cat),
        Loaded::Functor(f) => {
            let mut r = check_graded(&f.dom);
            r.merge(check_graded(&f.cod));
            if r.ok() {
                r.merge(check_graded_functor(f));
            }
            r
        }
        Loaded::Module(m) => check_module(m),
        Loaded::Duoidal(d) => check_duoidal(d),
    };
    println!("KIND {}", l.kind());
    report(&r)
}

/// A graded target seen from the side the functors land in.
fn as_target(arg: &str, side: Side) -> Result<Arc<BigradedCat>, Error> {
    Ok(Arc::new(match load(arg)? {
        Loaded::Bigraded(c) => c,
        Loaded::Graded(c) if side == Side::LeftSource => bigraded::from_left(&c)?,
        Loaded::Graded(c) => bigraded::from_right(&c)?,
        other => return Err(parse_err(arg, format!("expected a bigraded or graded category, found {}", other.kind()))),
    }))
}

fn load_bigraded(arg: &str) -> Result<Arc<BigradedCat>, Error> {
    match load(arg)? {
        Loaded::Bigraded(c) => Ok(Arc::new(c)),
        other => Err(parse_err(arg, format!("expected a bigraded category, found {}", other.kind()))),
    }
}

fn functor_cat(source: &Arc<GradedCat>, target: &Arc<BigradedCat>, side: Side, limits: Limits) -> Result<FunctorCat, Error> {
    let mut spec = FunctorCatSpec::new(side, source.clone(), target.clone());
    spec.limits = limits;
    build_functor_category(&spec)
}

/// Re-express a loaded functor between the given categories, matching ids.
fn rebase(f: &GradedFunctor, dom: &Arc<GradedCat>, cod: &Arc<GradedCat>) -> Result<GradedFunctor, Error> {
    let mut obj = vec![0; dom.n_obj()];
    for a in 0..f.dom.n_obj() {
        let name = f.dom.obj_name(a);
        let i = dom.obj_ix(name).ok_or_else(|| parse_err("source.objects", format!("unexpected object '{name}'")))?;
        let img = f.cod.obj_name(f.obj[a]);
        obj[i] = cod.obj_ix(img).ok_or_else(|| parse_err("objects", format!("unknown image '{img}'")))?;
    }
    let mut mor = vec![0; dom.n_elem()];
    for e in 0..f.dom.n_elem() {
        let name = f.dom.name(e);
        let i = dom.elem_ix(name).ok_or_else(|| parse_err("source.elements", format!("unexpected element '{name}'")))?;
        let img = f.cod.name(f.mor[e]);
        mor[i] = cod.elem_ix(img).ok_or_else(|| parse_err("morphisms", format!("unknown image '{img}'")))?;
    }
    if f.dom.n_obj() != dom.n_obj() || f.dom.n_elem() != dom.n_elem() {
        return Err(parse_err("source", "does not match the given category"));
    }
    GradedFunctor::new(dom.clone(), cod.clone(), obj, mor)
}

#[allow(clippy::too_many_arguments)]
fn curry(from: Corner, to: Corner, a: &str, b: &str, c: &str, input: &Path, out: &Path, limits: Limits) -> Outcome {
    let (a, b, c) = (load_graded(a)?, load_graded(b)?, load_bigraded(c)?);
    let f = match load(&input.display().to_string())? {
        Loaded::Functor(f) => f,
        other => return Err(parse_err("kind", format!("expected a functor, found {}", other.kind())).into()),
    };
    let ab = Arc::new(bigraded_product(&a, &b)?);
    let uses = |k: Corner| from == k || to == k;
    let bc = if uses(Corner::Left) { Some(functor_cat(&b, &c, Side::RightSource, limits)?) } else { None };
    let ac = if uses(Corner::Right) { Some(functor_cat(&a, &c, Side::LeftSource, limits)?) } else { None };
    let s: Sesquifunctor = match from {
        Corner::Product => from_product(&rebase(&f, &ab.cat, &c.cat)?, &a, &b, &ab, &c)?,
        Corner::Left => {
            let bc = bc.as_ref().expect("built");
            from_left(&rebase(&f, &a, &bc.cat)?, &b, &c, bc)
        }
        Corner::Right => {
            let ac = ac.as_ref().expect("built");
            from_right(&rebase(&f, &b, &ac.cat)?, &a, &c, ac)
        }
    };
    let r = gradcat::bifunctor::check_bifunctor(&s, false);
    let g = match to {
        Corner::Product => to_product(&s, &ab)?,
        Corner::Left => to_left(&s, bc.as_ref().expect("built"))?,
        Corner::Right => to_right(&s, ac.as_ref().expect("built"))?,
    };
    write(out, &Loaded::Functor(g))?;
    report(&r)
}

fn yoneda(base: Option<String>, category: Option<String>, limits: Limits) -> Outcome {
    let b = match (base, category) {
        (_, Some(c)) => load_graded(&c)?,
        (Some(v), None) => {
            let v = builtins::base(&v).ok_or_else(|| parse_err("base", format!("unknown base '{v}'")))?;
            Arc::new(builtins::self_right(&v))
        }
        (None, None) => return Err(parse_err("category", "give --category or --base").into()),
    };
    let setup = YonedaSetup::new(&b, Vec::new(), limits)?;
    let (_, y) = yoneda_embedding(&setup, limits)?;
    let ff = is_fully_faithful(&y);
    let fs = setup.presheaf_functors(limits)?;
    let cat = setup.hat.base().cat().clone();
    let mut checked = 0;
    let mut ok = ff;
    for (i, f) in fs.iter().enumerate() {
        for bb in 0..b.n_obj() {
            for x2 in 0..cat.n_obj() {
                let w = yoneda_check(&setup, f, bb, x2, limits)?;
                checked += 1;
                ok &= w.bijective;
                println!(
                    "YONEDA F={i} B={} X'={} nat={} value={} bijective={}",
                    b.obj_name(bb),
                    cat.obj_name(x2),
                    w.transformations,
                    w.elements,
                    w.bijective
                );
            }
        }
    }
    println!("FULLY-FAITHFUL {ff}");
    println!("FUNCTORS {}", fs.len());
    println!("SUMMARY ok={ok} checked={checked}");
    if ok {
        Ok(())
    } else {
        Err(Failure::Laws)
    }
}

fn duoidal_square(category: &str, quad: &[String], duoidal: Option<String>) -> Outcome {
    let c = load_graded(category)?;
    let d = match duoidal {
        Some(d) => load_duoidal(&d)?,
        None => braided_duoidal(c.base().clone())?,
    };
    let q: Vec<usize> = quad
        .iter()
        .enumerate()
        .map(|(i, id)| c.elem_ix(id).ok_or_else(|| parse_err(&format!("quad[{i}]"), format!("unknown element '{id}'"))))
        .collect::<Result<_, _>>()?;
    let st = compute_sigma_tau(&d);
    let vg = is_vgraded_square(&d, &st, &c, q[0], q[1], q[2], q[3])?;
    let cs = c_star(&d, &c)?;
    let tw = Twisted { d: &d, c: &c, cs: &cs };
    let bg = is_square(&cs, tw.ell(q[0]), tw.ell(q[1]), tw.r(q[2]), tw.r(q[3]))?.is_some();
    println!("VSQUARE holds={vg}");
    println!("CSTAR holds={bg}");
    if vg != bg {
        println!("LAW square-correspondence FAIL witness=({})", quad.join(","));
    }
    println!("SUMMARY ok={} checked=1", vg == bg);
    if vg == bg {
        Ok(())
    } else {
        Err(Failure::Laws)
    }
}

fn flip(duoidal: &str, budget: usize) -> Outcome {
    let d = load_duoidal(duoidal)?;
    let verdict = flip_test(&d, &[], budget)?;
    let symmetric = d.base.is_symmetric();
    println!("SYMMETRIC {symmetric}");
    match &verdict.counterexample {
        None => println!("COUNTEREXAMPLE none"),
        Some(w) => {
            println!("COUNTEREXAMPLE category={} quad=({})", w.category, w.quadruple.join(","));
            if let Some((x, x2)) = &w.proof_grades {
                println!("PROOF-SHAPE X={x} X'={x2}");
            }
        }
    }
    // the characterization: a counterexample exists iff the braiding is not symmetric
    let ok = verdict.counterexample.is_some() != symmetric;
    if !ok {
        println!("LAW flip-characterization FAIL witness=({duoidal})");
    }
    println!("SUMMARY ok={ok} checked={}", verdict.squares_checked);
    if ok {
        Ok(())
    } else {
        Err(Failure::Laws)
    }
}

fn envelope(category: &str, out: &Path, limits: Limits) -> Outcome {
    let c = load_graded(category)?;
    let env = build_envelope(&c, limits)?;
    let mut r = check_graded(&env.cat);
    if r.ok() {
        r.merge(check_graded_functor(&env.embedding()?));
        r.merge(check_envelope(&env)?);
    }
    write(out, &Loaded::Graded(env.cat.clone()))?;
    report(&r)
}

fn examples(name: &str, out: Option<PathBuf>) -> Outcome {
    if name == "list" {
        for b in builtins::BASES {
            println!("{b}");
        }
        for b in builtins::BASES.iter().filter(|b| builtins::base(b).is_some_and(|v| v.braiding().is_some())) {
            println!("duoidal-{b}");
        }
        for g in builtins::GRADED {
            println!("{g}");
        }
        for g in builtins::GRADED.iter().filter(|g| g.contains("right")) {
            println!("identity-module-{g}");
        }
        return Ok(());
    }
    let l = if let Some(c) = builtins::graded(name) {
        Loaded::Graded(Arc::new(c))
    } else if let Some(v) = builtins::base(name) {
        Loaded::Monoidal(Arc::new(v))
    } else if let Some(v) = name.strip_prefix("duoidal-").and_then(builtins::base) {
        Loaded::Duoidal(braided_duoidal(Arc::new(v))?)
    } else if let Some(c) = name.strip_prefix("identity-module-").and_then(builtins::graded) {
        let m = identity_module(&Arc::new(c));
        m.validate()?;
        Loaded::Module(m)
    } else {
        return Err(parse_err("name", format!("unknown example '{name}'")).into());
    };
    match out {
        Some(p) => write(&p, &l)?,
        None => print!("{}", to_json(&l)),
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let limits = Limits { max_objects: cli.max_objects, max_hom: cli.max_hom };
    match cli.cmd {
        Cmd::Check { file } => check(&file),
        Cmd::FunctorCat { source, target, side, out } => {
            let side = match side {
                SideArg::Left => Side::LeftSource,
                SideArg::Right => Side::RightSource,
            };
            let fc = functor_cat(&load_graded(&source)?, &as_target(&target, side)?, side, limits)?;
            println!("FUNCTORS {}", fc.functors.len());
            write(&out, &Loaded::Graded(fc.cat.clone()))?;
            report(&check_graded(&fc.cat))
        }
        Cmd::Product { left, right, out } => {
            let p = bigraded_product(&load_graded(&left)?, &load_graded(&right)?)?;
            let r = check_graded(&p.cat);
            write(&out, &Loaded::Bigraded(p))?;
            report(&r)
        }
        Cmd::Curry { from, to, a, b, c, input, out } => curry(from, to, &a, &b, &c, &input, &out, limits),
        Cmd::Yoneda { base, category } => yoneda(base, category, limits),
        Cmd::DuoidalSquare { category, quad, duoidal } => duoidal_square(&category, &quad, duoidal),
        Cmd::FlipTest { duoidal, budget } => flip(&duoidal, budget),
        Cmd::Envelope { category, out } => envelope(&category, &out, limits),
        Cmd::Examples { name, out } => examples(&name, out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Laws) => ExitCode::from(1),
        Err(Failure::Err(e @ Error::Budget { .. })) => {
            eprintln!("{e}");
            ExitCode::from(3)
        }
        Err(Failure::Err(e)) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
