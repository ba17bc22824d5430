//! `qhyp`: command-line front end.
//!
//! Exit codes: 0 computed or positive, 1 negative, 2 absent within the
//! search bound or inconclusive, 3 input error, 4 resource cap.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qhyp::completion::{default_base, Completion, QConjugacy};
use qhyp::construction::{check_amalgam, check_separated_hnn, ConstructionFile, Outcome};
use qhyp::graph::{conjugate_intersections_finite, is_conjugate_separated, CoreGraph};
use qhyp::presentation::Presentation;
use qhyp::qword::{parse_qword, QWord};
use qhyp::tower::{Tower, TowerConjugacy};
use qhyp::vtable::{VTables, DEFAULT_MAX_LEVEL};
use qhyp::word::{self, Alphabet, Word};
use qhyp::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "qhyp",
    version,
    about = "Free groups, centralizer towers and Q-completions"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Free-group words.
    #[command(subcommand)]
    Word(WordCmd),
    /// Finitely generated subgroups via core graphs.
    #[command(subcommand)]
    Subgroup(SubgroupCmd),
    /// Hyperbolicity of an HNN-extension given as a JSON file.
    CheckHnn { file: String },
    /// Hyperbolicity of an amalgamated product given as a JSON file.
    CheckAmalgam { file: String },
    /// Centralizer-extension towers given as JSON files.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Effective sets V_n.
    #[command(subcommand)]
    Vn(VnCmd),
    /// Words with rational exponents.
    #[command(subcommand)]
    Qword(QwordCmd),
}

#[derive(Args)]
struct BaseArg {
    /// Generator letters, e.g. `ab`. Defaults to `a` through the largest
    /// letter used, at least `ab`.
    #[arg(long)]
    base: Option<String>,
}

#[derive(Subcommand)]
enum WordCmd {
    /// Free reduction.
    Reduce {
        word: String,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Conjugacy with a conjugator `c`, `c⁻¹ w1 c = w2`.
    Conj {
        w1: String,
        w2: String,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Primitive root of the cyclic reduction.
    Root {
        word: String,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Dehn area in a presentation given as a JSON file.
    Area {
        presentation: String,
        word: String,
        #[arg(long, default_value_t = 6)]
        area_bound: usize,
    },
}

#[derive(Subcommand)]
enum SubgroupCmd {
    /// Core graph of the subgroup generated by the given words.
    Build {
        #[arg(required = true)]
        gens: Vec<String>,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Membership of `word` in the subgroup generated by `gens`.
    Member {
        word: String,
        #[arg(required = true)]
        gens: Vec<String>,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Malnormality (conjugate separation).
    Malnormal {
        #[arg(required = true)]
        gens: Vec<String>,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Quasiconvexity constant.
    QcConst {
        #[arg(required = true)]
        gens: Vec<String>,
        #[command(flatten)]
        base: BaseArg,
    },
    /// Whether every `U ∩ gVg⁻¹` is trivial; `V` after `--v`.
    Intersect {
        #[arg(required = true)]
        u: Vec<String>,
        #[arg(long = "v", required = true, num_args = 1..)]
        v: Vec<String>,
        #[command(flatten)]
        base: BaseArg,
    },
}

#[derive(Subcommand)]
enum TowerCmd {
    /// Presentation and steps.
    Show { file: String },
    /// Canonical form of a tower word.
    Reduce { file: String, word: String },
    /// Conjugacy inside the tower.
    Conj {
        file: String,
        w1: String,
        w2: String,
        #[arg(long)]
        k_bound: Option<i64>,
    },
}

#[derive(Subcommand)]
enum VnCmd {
    /// Lists V_n.
    List {
        #[arg(long, default_value = "ab")]
        base: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: usize,
    },
}

#[derive(Args)]
struct QOpts {
    #[command(flatten)]
    base: BaseArg,
    #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: usize,
}

#[derive(Subcommand)]
enum QwordCmd {
    /// Canonical form and tower level.
    Normalize {
        word: String,
        #[command(flatten)]
        opts: QOpts,
    },
    /// Equality in the completion.
    Equal {
        w1: String,
        w2: String,
        #[command(flatten)]
        opts: QOpts,
    },
    /// Conjugacy with a certificate `c`, `c⁻¹ w1 c = w2`.
    Conj {
        w1: String,
        w2: String,
        #[command(flatten)]
        opts: QOpts,
        #[arg(long)]
        k_bound: Option<i64>,
    },
}

#[derive(Clone, Copy)]
enum Status {
    Positive,
    Negative,
    Absent,
}

impl Status {
    fn from_bool(b: bool) -> Status {
        if b {
            Status::Positive
        } else {
            Status::Negative
        }
    }

    fn code(self) -> u8 {
        match self {
            Status::Positive => 0,
            Status::Negative => 1,
            Status::Absent => 2,
        }
    }
}

/// Failure before a result was computed.
struct Failure {
    code: &'static str,
    message: String,
    exit: u8,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match &e {
            Error::Syntax { .. } => "syntax",
            Error::UnknownGenerator(_) => "unknown-generator",
            Error::InvalidAlphabet(_) => "invalid-alphabet",
            Error::EmptyWord => "empty-word",
            Error::ZeroDenominator => "zero-denominator",
            Error::Overflow => "overflow",
            Error::NotPrimitive(_) => "not-primitive",
            Error::NotIsomorphism(_) => "not-isomorphism",
            Error::UnknownSymbol(_) => "unknown-symbol",
            Error::NotInTower(_) => "not-in-tower",
            Error::Schema(_) => "schema",
            Error::ResourceCap(_) => "resource-cap",
        };
        let exit = if matches!(e, Error::ResourceCap(_)) {
            4
        } else {
            3
        };
        Failure {
            code,
            message: e.to_string(),
            exit,
        }
    }
}

type CmdResult = Result<(Status, Value), Failure>;

/// Argument text, or the contents of a file for `@path`.
fn text_arg(s: &str) -> Result<String, Failure> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| t.trim().to_string())
            .map_err(|e| Failure {
                code: "io",
                message: format!("{path}: {e}"),
                exit: 3,
            }),
        None => Ok(s.to_string()),
    }
}

fn file_arg(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: "io",
        message: format!("{path}: {e}"),
        exit: 3,
    })
}

fn alphabet(base: &BaseArg, texts: &[&str]) -> Result<Alphabet, Failure> {
    if let Some(b) = &base.base {
        return Ok(Alphabet::new(b)?);
    }
    let max = texts
        .iter()
        .flat_map(|t| t.chars())
        .filter(char::is_ascii_alphabetic)
        .map(|c| c.to_ascii_lowercase())
        .max()
        .unwrap_or('b')
        .max('b');
    Ok(Alphabet::new(&('a'..=max).collect::<String>())?)
}

fn words(a: &Alphabet, texts: &[String]) -> Result<Vec<Word>, Failure> {
    texts.iter().map(|t| Ok(a.parse(&text_arg(t)?)?)).collect()
}

fn run_word(cmd: WordCmd) -> CmdResult {
    match cmd {
        WordCmd::Reduce { word, base } => {
            let w = text_arg(&word)?;
            let a = alphabet(&base, &[&w])?;
            let r = a.parse(&w)?;
            Ok((
                Status::Positive,
                json!({"input": w, "reduced": a.format(&r), "length": r.len()}),
            ))
        }
        WordCmd::Conj { w1, w2, base } => {
            let (x, y) = (text_arg(&w1)?, text_arg(&w2)?);
            let a = alphabet(&base, &[&x, &y])?;
            let (u, v) = (a.parse(&x)?, a.parse(&y)?);
            let c = word::conjugator(&u, &v);
            Ok((
                Status::from_bool(c.is_some()),
                json!({"conjugate": c.is_some(), "conjugator": c.map(|c| a.format(&c))}),
            ))
        }
        WordCmd::Root { word, base } => {
            let w = text_arg(&word)?;
            let a = alphabet(&base, &[&w])?;
            let cw = a.parse(&w)?.cyclic_reduce();
            let (root, n) = cw.core.extract_root()?;
            Ok((
                Status::Positive,
                json!({
                    "cyclic_core": a.format(&cw.core),
                    "conjugator": a.format(&cw.conjugator),
                    "root": a.format(&root),
                    "exponent": n,
                    "primitive": n == 1,
                }),
            ))
        }
        WordCmd::Area {
            presentation,
            word,
            area_bound,
        } => {
            let p = Presentation::from_json(&file_arg(&presentation)?)?;
            let w = text_arg(&word)?;
            let wd = p.alphabet.parse(&w)?;
            let area = p.dehn_area(&wd, area_bound);
            let status = if area.is_some() {
                Status::Positive
            } else {
                Status::Absent
            };
            Ok((
                status,
                json!({
                    "word": p.alphabet.format(&wd),
                    "area": area,
                    "area_bound": area_bound,
                    "length_cap": p.area_length_cap(&wd, area_bound),
                }),
            ))
        }
    }
}

fn run_subgroup(cmd: SubgroupCmd) -> CmdResult {
    match cmd {
        SubgroupCmd::Build { gens, base } => {
            let a = alphabet(&base, &gens.iter().map(String::as_str).collect::<Vec<_>>())?;
            let g = CoreGraph::build(&a, &words(&a, &gens)?);
            let basis: Vec<String> = g.basis().iter().map(|w| a.format(w)).collect();
            Ok((
                Status::Positive,
                json!({
                    "rank": g.rank(),
                    "vertices": g.num_vertices(),
                    "edges": g.num_edges(),
                    "basis": basis,
                    "adjacency": g.to_adjacency_text(&a),
                }),
            ))
        }
        SubgroupCmd::Member { word, gens, base } => {
            let mut all: Vec<&str> = gens.iter().map(String::as_str).collect();
            all.push(&word);
            let a = alphabet(&base, &all)?;
            let g = CoreGraph::build(&a, &words(&a, &gens)?);
            let w = a.parse(&text_arg(&word)?)?;
            let m = g.contains(&w);
            Ok((
                Status::from_bool(m),
                json!({"word": a.format(&w), "member": m}),
            ))
        }
        SubgroupCmd::Malnormal { gens, base } => {
            let a = alphabet(&base, &gens.iter().map(String::as_str).collect::<Vec<_>>())?;
            let g = CoreGraph::build(&a, &words(&a, &gens)?);
            let (ok, wit) = is_conjugate_separated(&g);
            let wit = wit.map(|w| json!({"x": a.format(&w.x), "u": a.format(&w.u)}));
            Ok((
                Status::from_bool(ok),
                json!({"malnormal": ok, "witness": wit}),
            ))
        }
        SubgroupCmd::QcConst { gens, base } => {
            let a = alphabet(&base, &gens.iter().map(String::as_str).collect::<Vec<_>>())?;
            let g = CoreGraph::build(&a, &words(&a, &gens)?);
            Ok((
                Status::Positive,
                json!({"epsilon": g.quasiconvexity_constant(), "lambda": "1/1"}),
            ))
        }
        SubgroupCmd::Intersect { u, v, base } => {
            let all: Vec<&str> = u.iter().chain(&v).map(String::as_str).collect();
            let a = alphabet(&base, &all)?;
            let gu = CoreGraph::build(&a, &words(&a, &u)?);
            let gv = CoreGraph::build(&a, &words(&a, &v)?);
            let (ok, wit) = conjugate_intersections_finite(&gu, &gv);
            let wit = wit.map(|w| json!({"g": a.format(&w.g), "u": a.format(&w.u)}));
            Ok((Status::from_bool(ok), json!({"finite": ok, "witness": wit})))
        }
    }
}

fn verdict_status(o: Outcome) -> Status {
    match o {
        Outcome::Hyperbolic => Status::Positive,
        Outcome::NotHyperbolic => Status::Negative,
        Outcome::Inconclusive => Status::Absent,
    }
}

fn run_check(file: &str, hnn: bool) -> CmdResult {
    let cf = ConstructionFile::from_json(&file_arg(file)?)?;
    let v = if hnn {
        check_separated_hnn(&cf.to_hnn()?)?
    } else {
        check_amalgam(&cf.to_amalgam()?)?
    };
    let value = serde_json::to_value(&v).expect("verdict serializes");
    Ok((verdict_status(v.outcome), value))
}

fn load_tower(file: &str) -> Result<Tower, Failure> {
    Ok(Tower::from_file(&ConstructionFile::from_json(&file_arg(
        file,
    )?)?)?)
}

fn run_tower(cmd: TowerCmd) -> CmdResult {
    match cmd {
        TowerCmd::Show { file } => {
            let t = load_tower(&file)?;
            let steps: Vec<Value> = t
                .steps()
                .iter()
                .map(|s| {
                    json!({
                        "root": s.root,
                        "v": s.v_text,
                        "m": s.m,
                        "value": t.display(&s.root_elem),
                    })
                })
                .collect();
            Ok((
                Status::Positive,
                json!({
                    "presentation": t.presentation_text(),
                    "generators": t.generator_count(),
                    "steps": steps,
                }),
            ))
        }
        TowerCmd::Reduce { file, word } => {
            let t = load_tower(&file)?;
            let e = t.reduce_to_semicanonical(&text_arg(&word)?)?;
            Ok((
                Status::Positive,
                json!({"canonical": t.display(&e), "syllables": t.syllables(&e)}),
            ))
        }
        TowerCmd::Conj {
            file,
            w1,
            w2,
            k_bound,
        } => {
            let t = load_tower(&file)?;
            let x = t.reduce_to_semicanonical(&text_arg(&w1)?)?;
            let y = t.reduce_to_semicanonical(&text_arg(&w2)?)?;
            let k = k_bound.unwrap_or_else(|| Tower::default_k_bound(&x, &y));
            Ok(match t.conjugate_in_tower(&x, &y, k)? {
                TowerConjugacy::Conjugate(c) => (
                    Status::Positive,
                    json!({"result": "conjugate", "certificate": t.display(&c), "k_bound": k}),
                ),
                TowerConjugacy::ProvenDistinct => (
                    Status::Negative,
                    json!({"result": "proven-distinct", "k_bound": k}),
                ),
                TowerConjugacy::AbsentWithinBound => (
                    Status::Absent,
                    json!({"result": "absent-within-bound", "k_bound": k}),
                ),
            })
        }
    }
}

fn run_vn(cmd: VnCmd) -> CmdResult {
    let VnCmd::List { base, n, max_level } = cmd;
    let mut t = VTables::with_env_cache(Alphabet::new(&base)?, max_level);
    let entries: Vec<String> = t.level(n)?.iter().map(|e| e.text.clone()).collect();
    let a = t.base().clone();
    let values: Vec<String> = t.level(n)?.iter().map(|e| e.elem.display(&a)).collect();
    let prev = t.tower(n - 1)?.generator_count();
    let gens = t.tower(n)?.generator_count();
    Ok((
        Status::Positive,
        json!({
            "base": base,
            "n": n,
            "entries": entries,
            "values": values,
            "generators_previous": prev,
            "generators": gens,
        }),
    ))
}

fn completion(opts: &QOpts, ws: &[&QWord]) -> Result<Completion, Failure> {
    let base = match &opts.base.base {
        Some(b) => Alphabet::new(b)?,
        None => default_base(ws),
    };
    Ok(Completion::new(VTables::with_env_cache(
        base,
        opts.max_level,
    )))
}

fn qparse(s: &str) -> Result<QWord, Failure> {
    Ok(parse_qword(&text_arg(s)?)?)
}

fn run_qword(cmd: QwordCmd) -> CmdResult {
    match cmd {
        QwordCmd::Normalize { word, opts } => {
            let w = qparse(&word)?;
            let mut c = completion(&opts, &[&w])?;
            let n = c.normalize(&w)?;
            Ok((
                Status::Positive,
                json!({
                    "canonical": n.text,
                    "syllables": n.syllables,
                    "depth": n.depth,
                    "level": n.level,
                }),
            ))
        }
        QwordCmd::Equal { w1, w2, opts } => {
            let (x, y) = (qparse(&w1)?, qparse(&w2)?);
            let mut c = completion(&opts, &[&x, &y])?;
            let nx = c.normalize(&x)?;
            let ny = c.normalize(&y)?;
            let (eq, level) = c.q_equal(&x, &y)?;
            Ok((
                Status::from_bool(eq),
                json!({"equal": eq, "left": nx.text, "right": ny.text, "level": level}),
            ))
        }
        QwordCmd::Conj {
            w1,
            w2,
            opts,
            k_bound,
        } => {
            let (x, y) = (qparse(&w1)?, qparse(&w2)?);
            let mut c = completion(&opts, &[&x, &y])?;
            let (v, level) = c.q_conjugate(&x, &y, k_bound)?;
            let base = c.base().clone();
            Ok(match v {
                QConjugacy::Conjugate(e) => (
                    Status::Positive,
                    json!({"result": "conjugate", "certificate": e.display(&base), "level": level}),
                ),
                QConjugacy::ProvenDistinct => (
                    Status::Negative,
                    json!({"result": "proven-distinct", "level": level}),
                ),
                QConjugacy::AbsentWithinBound => (
                    Status::Absent,
                    json!({"result": "absent-within-bound", "level": level}),
                ),
            })
        }
    }
}

fn human(v: &Value) -> String {
    let mut out = String::new();
    let Value::Object(map) = v else {
        return format!("{v}\n");
    };
    for (k, x) in map {
        let s = match x {
            Value::String(s) if s.contains('\n') => format!("\n{}", s.trim_end()),
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            Value::Array(xs) if xs.iter().all(Value::is_string) => xs
                .iter()
                .map(|x| x.as_str().unwrap_or_default())
                .collect::<Vec<_>>()
                .join(", "),
            other => other.to_string(),
        };
        out.push_str(&format!("{k}: {s}\n"));
    }
    out
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json_mode = cli.json;
    let result = match cli.cmd {
        Cmd::Word(c) => run_word(c),
        Cmd::Subgroup(c) => run_subgroup(c),
        Cmd::CheckHnn { file } => run_check(&file, true),
        Cmd::CheckAmalgam { file } => run_check(&file, false),
        Cmd::Tower(c) => run_tower(c),
        Cmd::Vn(c) => run_vn(c),
        Cmd::Qword(c) => run_qword(c),
    };
    match result {
        Ok((status, value)) => {
            if json_mode {
                println!("{}", serde_json::to_string_pretty(&value).expect("json"));
            } else {
                print!("{}", human(&value));
            }
            ExitCode::from(status.code())
        }
        Err(f) => {
            if json_mode {
                let v = json!({"error": {"code": f.code, "message": f.message}});
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                eprintln!("error[{}]: {}", f.code, f.message);
            }
            ExitCode::from(f.exit)
        }
    }
}
