use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::parse::{parse_expr, parse_presentation, PresentationFile, PresentationKind};
use crate::drinfeld_kohno::{self, DkPresentation};
use crate::gsb::{self, CheckOptions, CompositionReport, Relation, RelationSet};
use crate::kukin::{self, KukinAmbiguity, KukinContext, KukinSolver};
use crate::liepoly::LiePoly;
use crate::semigroup::{knuth_bendix, orient, SgpPresentation};
use crate::words::{standard_bracketing, Alphabet, Word};

/// Environment variable holding the default `--degree`.
pub const DEGREE_ENV: &str = "LIE_GSB_DEGREE";
const FALLBACK_DEGREE: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "lie-gsb", version, about = "Gröbner-Shirshov bases in free Lie algebras")]
struct Cli {
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Check compositions on all cores.
    #[arg(long, global = true)]
    parallel: bool,
    /// Kukin length bound, overriding the file.
    #[arg(long, global = true)]
    bound: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Verify that the relations form a Gröbner-Shirshov basis.
    Check { file: PathBuf },
    /// Normal form of a Lie expression.
    Nf { file: PathBuf, expr: String },
    /// Irreducible basis words up to a degree.
    Basis {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Number of basis words in each degree.
    Ranks {
        file: PathBuf,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Decide whether two semigroup words give equal Lie words.
    Wp { file: PathBuf, u: String, v: String },
    /// Bounded completion.
    Complete {
        file: PathBuf,
        /// Largest degree (or rule length) admitted for new relations.
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, default_value_t = 16)]
        rounds: usize,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

struct Reply {
    verdict: String,
    ok: bool,
    text: String,
    records: Vec<Value>,
}

impl Reply {
    fn new(verdict: impl Into<String>, ok: bool) -> Self {
        Reply {
            verdict: verdict.into(),
            ok,
            text: String::new(),
            records: Vec::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }
}

struct Loaded {
    file: PresentationFile,
    base: Option<SgpPresentation>,
    bytes: Vec<u8>,
}

fn read(path: &Path) -> Result<Vec<u8>, String> {
    std::fs::read(path).map_err(|e| format!("error: cannot read {}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Loaded, String> {
    let bytes = read(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|_| format!("error: {} is not UTF-8", path.display()))?;
    let file = parse_presentation(text).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut all = bytes.clone();
    let base = match file.kind {
        PresentationKind::Semigroup => Some(sgp_of(&file)?),
        PresentationKind::Kukin => match file.kukin().and_then(|k| k.path.clone()) {
            Some(rel) => {
                let target = path.parent().unwrap_or(Path::new(".")).join(rel);
                let inner_bytes = read(&target)?;
                let inner_text = std::str::from_utf8(&inner_bytes)
                    .map_err(|_| format!("error: {} is not UTF-8", target.display()))?;
                let inner = parse_presentation(inner_text).map_err(|e| format!("{}: {e}", target.display()))?;
                if inner.kind != PresentationKind::Semigroup {
                    return Err(format!("error: {} is not a semigroup presentation", target.display()));
                }
                all.push(0);
                all.extend_from_slice(&inner_bytes);
                Some(sgp_of(&inner)?)
            }
            None => Some(sgp_of(&file)?),
        },
        _ => None,
    };
    Ok(Loaded { file, base, bytes: all })
}

fn sgp_of(file: &PresentationFile) -> Result<SgpPresentation, String> {
    SgpPresentation::new(file.alphabet.clone(), file.rules()).map_err(|e| format!("error: {e}"))
}

fn lie_set(file: &PresentationFile) -> Result<RelationSet, String> {
    let ring = file.mode().unwrap_or_default();
    let mut set = RelationSet::new(file.alphabet.clone(), ring);
    for (i, p) in file.relations().into_iter().enumerate() {
        let id = format!("R{}", i + 1);
        let r = Relation::new(&id, "relation", p, ring).map_err(|e| format!("error: {id}: {e}"))?;
        set.push(r).map_err(|e| format!("error: {id}: {e}"))?;
    }
    Ok(set)
}

fn kukin_ctx(loaded: &Loaded, cli: &Cli) -> Result<KukinContext, String> {
    let bound = cli
        .bound
        .or_else(|| loaded.file.kukin().and_then(|k| k.bound))
        .unwrap_or(kukin::DEFAULT_BOUND);
    let base = loaded.base.as_ref().expect("semigroup data");
    KukinContext::new(base, bound).map_err(|e| format!("error: {e}"))
}

fn dk(file: &PresentationFile) -> Result<DkPresentation, String> {
    drinfeld_kohno::dk_build(file.dk_n().expect("dk file")).map_err(|e| format!("error: {e}"))
}

fn degree(flag: Option<usize>, file: &PresentationFile) -> Result<usize, String> {
    if let Some(d) = flag.or(file.degree()) {
        return Ok(d);
    }
    match std::env::var(DEGREE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| format!("error: {DEGREE_ENV}={v} is not a number")),
        Err(_) => Ok(FALLBACK_DEGREE),
    }
}

fn report_records(report: &CompositionReport) -> Vec<Value> {
    report.records.iter().map(|r| report.record_json(r)).collect()
}

fn report_text(reply: &mut Reply, report: &CompositionReport) {
    for r in report.failures() {
        reply.line(format!(
            "FAIL {} ∧ {} at {}: {}",
            r.f_id,
            r.g_id,
            report.alphabet.format_word(&r.ambiguity.w),
            r.error
                .clone()
                .unwrap_or_else(|| r.remainder.display(&report.alphabet).to_string())
        ));
    }
}

fn cmd_check(loaded: &Loaded, cli: &Cli) -> Result<Reply, String> {
    let opts = CheckOptions {
        parallel: cli.parallel,
        censor_above_degree: None,
    };
    match loaded.file.kind {
        PresentationKind::Lie => {
            let set = lie_set(&loaded.file)?;
            let report = gsb::check_gsb_with(&set, opts);
            let mut reply = Reply::new(if report.passed() { "pass" } else { "fail" }, report.passed());
            reply.line(format!("relations: {}", set.len()));
            reply.line(format!("ambiguities: {}", report.records.len()));
            report_text(&mut reply, &report);
            reply.records = report_records(&report);
            Ok(reply)
        }
        PresentationKind::Dk => {
            let n = loaded.file.dk_n().unwrap();
            let r = drinfeld_kohno::dk_check_with(n, opts).map_err(|e| format!("error: {e}"))?;
            let mut reply = Reply::new(if r.passed() { "pass" } else { "fail" }, r.passed());
            reply.line(format!("L_{n}"));
            reply.line(format!("ambiguities: {}", r.report.records.len()));
            for (pair, count) in r.family_counts() {
                reply.line(format!("{pair}: {count}"));
            }
            let stragglers: Vec<usize> = r.stragglers().collect();
            reply.line(format!("unclassified: {}", stragglers.len()));
            report_text(&mut reply, &r.report);
            reply.records = r
                .report
                .records
                .iter()
                .zip(&r.classes)
                .map(|(rec, class)| {
                    let mut v = r.report.record_json(rec);
                    v["family"] = class.map_or(Value::Null, |c| c.to_string().into());
                    v
                })
                .collect();
            Ok(reply)
        }
        PresentationKind::Semigroup | PresentationKind::Kukin => {
            let ctx = kukin_ctx(loaded, cli)?;
            let r = kukin::verify_s1_with(&ctx, cli.parallel).map_err(|e| format!("error: {e}"))?;
            let mut reply = Reply::new(if r.passed() { "pass" } else { "fail" }, r.passed());
            reply.line(format!("bound: {}", r.bound));
            reply.line(format!("relations: {}", relations_of(&ctx)?));
            reply.line(format!("ambiguities: {}", r.report.records.len()));
            for kind in [KukinAmbiguity::HatZWithCongruence, KukinAmbiguity::CongruenceInCongruence] {
                reply.line(format!("{kind}: {}", r.count(kind)));
            }
            reply.line(format!("censored: {}", r.censored()));
            report_text(&mut reply, &r.report);
            reply.records = report_records(&r.report);
            Ok(reply)
        }
    }
}

fn relations_of(ctx: &KukinContext) -> Result<usize, String> {
    kukin::build_s1(ctx).map(|s| s.len()).map_err(|e| format!("error: {e}"))
}

fn parse_in(expr: &str, alphabet: &Alphabet) -> Result<LiePoly, String> {
    parse_expr(expr, alphabet)
        .map(|e| e.eval())
        .map_err(|e| format!("error: expression: {}", e))
}

fn cmd_nf(loaded: &Loaded, cli: &Cli, expr: &str) -> Result<Reply, String> {
    let (alphabet, nf) = match loaded.file.kind {
        PresentationKind::Lie => {
            let set = lie_set(&loaded.file)?;
            let p = parse_in(expr, set.alphabet())?;
            let nf = gsb::reduce(&p, &set).map_err(|e| format!("error: {e}"))?;
            (set.alphabet().clone(), nf)
        }
        PresentationKind::Dk => {
            let dk = dk(&loaded.file)?;
            let p = parse_in(expr, dk.alphabet())?;
            let nf = gsb::reduce(&p, dk.relations()).map_err(|e| format!("error: {e}"))?;
            (dk.alphabet().clone(), nf)
        }
        PresentationKind::Semigroup | PresentationKind::Kukin => {
            let ctx = kukin_ctx(loaded, cli)?;
            let p = parse_in(expr, ctx.alphabet())?;
            let alphabet = ctx.alphabet().clone();
            let solver = KukinSolver::new(ctx).map_err(|e| format!("error: {e}"))?;
            (alphabet, solver.reduce(&p).map_err(|e| format!("error: {e}"))?)
        }
    };
    let shown = nf.display(&alphabet).to_string();
    let mut reply = Reply::new("ok", true);
    reply.line(&shown);
    reply.records.push(json!({ "input": expr, "normal_form": shown }));
    Ok(reply)
}

fn basis_words(loaded: &Loaded, cli: &Cli, deg: usize) -> Result<(Alphabet, Vec<Word>), String> {
    match loaded.file.kind {
        PresentationKind::Lie => {
            let set = lie_set(&loaded.file)?;
            let report = gsb::check_gsb_with(
                &set,
                CheckOptions {
                    parallel: cli.parallel,
                    censor_above_degree: None,
                },
            );
            if !report.passed() {
                return Err("error: the relations are not a Gröbner-Shirshov basis; run `check`".into());
            }
            Ok((set.alphabet().clone(), gsb::irr_enumerate(&set, deg)))
        }
        PresentationKind::Dk => {
            let dk = dk(&loaded.file)?;
            Ok((dk.alphabet().clone(), gsb::irr_enumerate(dk.relations(), deg)))
        }
        PresentationKind::Semigroup | PresentationKind::Kukin => {
            let ctx = kukin_ctx(loaded, cli)?;
            if deg > ctx.bound() + 1 {
                return Err(format!(
                    "error: degree {deg} exceeds bound + 1 = {}; raise --bound",
                    ctx.bound() + 1
                ));
            }
            let set = kukin::build_s1(&ctx).map_err(|e| format!("error: {e}"))?;
            Ok((ctx.alphabet().clone(), gsb::irr_enumerate(&set, deg)))
        }
    }
}

fn cmd_basis(loaded: &Loaded, cli: &Cli, flag: Option<usize>) -> Result<Reply, String> {
    let deg = degree(flag, &loaded.file)?;
    let (alphabet, words) = basis_words(loaded, cli, deg)?;
    let mut reply = Reply::new("ok", true);
    for w in &words {
        let word = alphabet.format_word(w);
        let bracket = standard_bracketing(w).expect("basis words are ALSWs").display(&alphabet).to_string();
        reply.line(format!("{word}\t{bracket}"));
        reply.records.push(json!({ "degree": w.len(), "word": word, "bracket": bracket }));
    }
    Ok(reply)
}

fn cmd_ranks(loaded: &Loaded, cli: &Cli, flag: Option<usize>) -> Result<Reply, String> {
    let deg = degree(flag, &loaded.file)?;
    let (_, words) = basis_words(loaded, cli, deg)?;
    let mut ranks = vec![0usize; deg];
    for w in &words {
        ranks[w.len() - 1] += 1;
    }
    let mut reply = Reply::new("ok", true);
    for (i, r) in ranks.iter().enumerate() {
        reply.line(format!("{}\t{r}", i + 1));
        reply.records.push(json!({ "degree": i + 1, "rank": r }));
    }
    Ok(reply)
}

fn cmd_wp(loaded: &Loaded, cli: &Cli, u: &str, v: &str) -> Result<Reply, String> {
    if !matches!(loaded.file.kind, PresentationKind::Semigroup | PresentationKind::Kukin) {
        return Err("error: `wp` needs a semigroup or kukin file".into());
    }
    let ctx = kukin_ctx(loaded, cli)?;
    let base = ctx.base().clone();
    let parse = |s: &str| -> Result<Word, String> {
        let w = base.parse_word(s).map_err(|e| format!("error: {e}"))?;
        if w.is_empty() {
            return Err("error: words must be nonempty".into());
        }
        Ok(w)
    };
    let (wu, wv) = (parse(u)?, parse(v)?);
    let sgp_nf = (ctx.rewriting().normal_form(&wu), ctx.rewriting().normal_form(&wv));
    let alphabet = ctx.alphabet().clone();
    let solver = KukinSolver::new(ctx).map_err(|e| format!("error: {e}"))?;
    let nfs = solver.normal_forms([&wu, &wv]).map_err(|e| format!("error: {e}"))?;
    let equal = nfs[0] == nfs[1];
    if equal != (sgp_nf.0 == sgp_nf.1) {
        return Err("error: Lie and semigroup normal forms disagree".into());
    }
    let mut reply = Reply::new(if equal { "EQUAL" } else { "NOT EQUAL" }, equal);
    reply.line(&reply.verdict.clone());
    for (word, (sgp, lie)) in [(u, (&sgp_nf.0, &nfs[0])), (v, (&sgp_nf.1, &nfs[1]))] {
        let sgp = base.format_word(sgp);
        let lie = lie.display(&alphabet).to_string();
        reply.line(format!("{}: {sgp}\t{lie}", word.trim()));
        reply
            .records
            .push(json!({ "word": word.trim(), "semigroup_normal_form": sgp, "normal_form": lie }));
    }
    Ok(reply)
}

fn cmd_complete(loaded: &Loaded, max_degree: usize, rounds: usize) -> Result<Reply, String> {
    match loaded.file.kind {
        PresentationKind::Semigroup | PresentationKind::Kukin => {
            let base = loaded.base.as_ref().expect("semigroup data");
            let (rs, done) = match knuth_bendix(&orient(base), max_degree, rounds) {
                Ok(rs) => (rs, true),
                Err(inc) => (inc.system, false),
            };
            let mut reply = Reply::new(if done { "complete" } else { "incomplete" }, done);
            for r in rs.rules() {
                let (l, rt) = (base.alphabet.format_word(&r.lhs), base.alphabet.format_word(&r.rhs));
                reply.line(format!("{l} -> {rt}"));
                reply.records.push(json!({ "lhs": l, "rhs": rt }));
            }
            Ok(reply)
        }
        PresentationKind::Lie | PresentationKind::Dk => {
            let set = match loaded.file.kind {
                PresentationKind::Dk => dk(&loaded.file)?.into_relations(),
                _ => lie_set(&loaded.file)?,
            };
            let out = gsb::complete(&set, max_degree, rounds).map_err(|e| format!("error: {e}"))?;
            let mut reply = Reply::new(
                if out.complete { "complete" } else { "incomplete" },
                out.complete,
            );
            reply.line(format!("rounds: {}", out.rounds));
            for r in out.set.relations() {
                let shown = r.poly().display(out.set.alphabet()).to_string();
                reply.line(format!("{}: {shown}", r.id()));
                reply.records.push(json!({ "id": r.id(), "relation": shown }));
            }
            Ok(reply)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Reply, Vec<u8>, &'static str), String> {
    let (file, extra, name): (&Path, Vec<&str>, &'static str) = match &cli.cmd {
        Cmd::Check { file } => (file, vec![], "check"),
        Cmd::Nf { file, expr } => (file, vec![expr.as_str()], "nf"),
        Cmd::Basis { file, .. } => (file, vec![], "basis"),
        Cmd::Ranks { file, .. } => (file, vec![], "ranks"),
        Cmd::Wp { file, u, v } => (file, vec![u.as_str(), v.as_str()], "wp"),
        Cmd::Complete { file, .. } => (file, vec![], "complete"),
    };
    let loaded = load(file)?;
    let mut digest_input = loaded.bytes.clone();
    for e in &extra {
        digest_input.push(0);
        digest_input.extend_from_slice(e.as_bytes());
    }
    let reply = match &cli.cmd {
        Cmd::Check { .. } => cmd_check(&loaded, cli)?,
        Cmd::Nf { expr, .. } => cmd_nf(&loaded, cli, expr)?,
        Cmd::Basis { degree, .. } => cmd_basis(&loaded, cli, *degree)?,
        Cmd::Ranks { degree, .. } => cmd_ranks(&loaded, cli, *degree)?,
        Cmd::Wp { u, v, .. } => cmd_wp(&loaded, cli, u, v)?,
        Cmd::Complete { max_degree, rounds, .. } => cmd_complete(&loaded, *max_degree, *rounds)?,
    };
    Ok((reply, digest_input, name))
}

/// Runs one invocation. `args` includes the program name. Exit codes: 0 on
/// success, 1 when a check, completion or word problem answers negatively,
/// 2 on usage, input or internal errors.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome::usage(text),
            };
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| dispatch(&cli)));
    let (reply, digest_input, name) = match result {
        Ok(Ok(r)) => r,
        Ok(Err(msg)) => return Outcome::usage(format!("{msg}\n")),
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown failure".into());
            return Outcome::usage(format!("error: internal: {msg}\n"));
        }
    };
    let code = if reply.ok { 0 } else { 1 };
    let stdout = if cli.json {
        let v = json!({
            "command": name,
            "input-digest": hex::encode(Sha256::digest(&digest_input)),
            "verdict": reply.verdict,
            "records": reply.records,
        });
        format!("{v}\n")
    } else if matches!(cli.cmd, Cmd::Check { .. } | Cmd::Complete { .. }) {
        format!("{}verdict: {}\n", reply.text, reply.verdict)
    } else {
        reply.text
    };
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}
