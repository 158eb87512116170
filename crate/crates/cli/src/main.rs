use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use tanglecolor::braid::{BraidWord, NamedBraid};
use tanglecolor::extension::{
    classify_extension, covering_p_lambda, find_galex_automorphism, galex, homogeneous_quandle,
};
use tanglecolor::format::{parse_document, Document, NamedQuandle, Record, ReportLine};
use tanglecolor::group::{fix_subgroup, FiniteGroup, GroupAutomorphism, Subgroup};
use tanglecolor::perm::Perm;
use tanglecolor::psi::{psi, symmetry_report_for, Symmetry};
use tanglecolor::quandle::{conj_quandle, end_permutation_p};
use tanglecolor::sweep::{run_sweep, SweepJob};

const FIXTURES_ENV: &str = "TANGLECOLOR_FIXTURES";

#[derive(Parser)]
#[command(name = "tanglecolor", version, about = "Quandle coloring invariants of knots given as braid words")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate, describe and construct quandles
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Extract and validate 2-cocycles
    #[command(subcommand)]
    Cocycle(CocycleCmd),
    /// Ψ vectors of knots
    Psi(KnotArgs),
    /// Ψ of K, mK, rK, rmK and which symmetries are distinguished
    Symmetry {
        #[command(flatten)]
        knots: KnotArgs,
        #[arg(long, default_value = "m,r,rm")]
        symmetries: String,
    },
    /// Symmetry reports for every quandle file in a directory against a knot list
    Sweep {
        #[arg(long)]
        quandles: PathBuf,
        #[arg(long)]
        knots: PathBuf,
        #[arg(long, default_value_t = 1)]
        base: usize,
        #[arg(long, default_value = "m,r,rm")]
        symmetries: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        #[arg(long)]
        max_inn_order: Option<u128>,
    },
}

#[derive(Subcommand)]
enum QuandleCmd {
    /// Check the quandle axioms of every quandle record in a file
    Check { file: PathBuf },
    /// Order, connectivity, faithfulness, Inn, fibers and the end permutation
    Info {
        file: PathBuf,
        #[arg(long)]
        name: Option<String>,
        #[arg(long, default_value_t = 1)]
        base: usize,
    },
    /// Build GAlex(G, f) from a group file
    Galex {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
        /// Automorphism record to use
        #[arg(long, conflicts_with = "fix_order")]
        auto: Option<String>,
        /// Search Aut(G) for the first connected GAlex with |Fix(G, f)| = k
        #[arg(long)]
        fix_order: Option<usize>,
        #[arg(long, default_value = "galex")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjugation quandle on the class of a permutation
    Conj {
        file: PathBuf,
        #[arg(long)]
        group: Option<String>,
        /// Cycle notation, e.g. "(1 2)(3 4)"
        #[arg(long)]
        element: String,
        #[arg(long, default_value = "conj")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Homogeneous quandle on cosets of a subgroup of Fix(G, f)
    Homog {
        file: PathBuf,
        #[command(flatten)]
        sel: GroupAutoArgs,
        #[command(flatten)]
        sub: SubgroupArgs,
        #[arg(long, default_value = "homog")]
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CocycleCmd {
    /// Cocycle of GAlex(G, f) over its Λ-coset quandle, Λ ≤ Fix(G, f)
    Extract {
        file: PathBuf,
        #[command(flatten)]
        sel: GroupAutoArgs,
        #[command(flatten)]
        sub: SubgroupArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate every cocycle record in a file
    Check { file: PathBuf },
}

#[derive(Args)]
struct GroupAutoArgs {
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    auto: Option<String>,
}

#[derive(Args)]
struct SubgroupArgs {
    /// Generators of the subgroup as comma-separated labels; default Fix(G, f)
    #[arg(long)]
    gens: Option<String>,
}

#[derive(Args)]
struct KnotArgs {
    #[arg(short, long)]
    quandle: PathBuf,
    /// Quandle record name when the file holds several
    #[arg(long)]
    name: Option<String>,
    /// Inline braid: "<strands> <letters> <w1> … <wk>"
    #[arg(long, conflicts_with = "knots", required_unless_present = "knots")]
    braid: Option<String>,
    #[arg(long)]
    knots: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    base: usize,
    #[arg(long)]
    max_inn_order: Option<u128>,
}

/// Resolves a path, falling back to the fixture root for relative paths
/// that do not exist as given.
fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os(FIXTURES_ENV) {
        Some(root) => Path::new(&root).join(path),
        None => path.to_path_buf(),
    }
}

fn load(path: &Path) -> Result<Document> {
    let path = resolve(path);
    let text = fs::read_to_string(&path).with_context(|| format!("{}: cannot read", path.display()))?;
    parse_document(&text).map_err(|e| anyhow!("{}: {e}", path.display()))
}

fn pick_quandle(path: &Path, doc: &Document, name: Option<&str>) -> Result<NamedQuandle> {
    let qs = doc.quandles();
    match name {
        Some(n) => qs.into_iter().find(|q| q.name == n).ok_or_else(|| anyhow!("{}: no quandle {n}", path.display())),
        None if qs.len() == 1 => Ok(qs.into_iter().next().unwrap()),
        None if qs.is_empty() => bail!("{}: no quandle records", path.display()),
        None => bail!("{}: several quandles, choose one with --name", path.display()),
    }
}

fn pick_group<'a>(path: &Path, doc: &'a Document, name: Option<&str>) -> Result<(String, &'a FiniteGroup)> {
    let groups: Vec<(&str, &FiniteGroup)> = doc
        .records
        .iter()
        .filter_map(|r| match r {
            Record::Group { name, group } => Some((name.as_str(), group)),
            _ => None,
        })
        .collect();
    let found = match name {
        Some(n) => groups.into_iter().find(|(g, _)| *g == n),
        None if groups.len() == 1 => groups.into_iter().next(),
        None => bail!("{}: expected exactly one group record or --group", path.display()),
    };
    found.map(|(n, g)| (n.to_string(), g)).ok_or_else(|| anyhow!("{}: no such group", path.display()))
}

fn pick_auto(path: &Path, doc: &Document, group: &str, name: Option<&str>) -> Result<(String, GroupAutomorphism)> {
    let autos: Vec<(&str, &GroupAutomorphism)> = doc
        .records
        .iter()
        .filter_map(|r| match r {
            Record::Auto { name, group: g, automorphism } if g == group => Some((name.as_str(), automorphism)),
            _ => None,
        })
        .collect();
    let found = match name {
        Some(n) => autos.into_iter().find(|(a, _)| *a == n),
        None if autos.len() == 1 => autos.into_iter().next(),
        None => bail!("{}: expected exactly one automorphism of {group} or --auto", path.display()),
    };
    found
        .map(|(n, f)| (n.to_string(), f.clone()))
        .ok_or_else(|| anyhow!("{}: no such automorphism of {group}", path.display()))
}

fn labels(s: &str, bound: usize) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<usize>() {
            Ok(x) if (1..=bound).contains(&x) => Ok(x - 1),
            _ => Err(anyhow!("label {t:?} is not in 1..={bound}")),
        })
        .collect()
}

fn subgroup(group: &FiniteGroup, f: &GroupAutomorphism, args: &SubgroupArgs) -> Result<Subgroup> {
    Ok(match &args.gens {
        Some(g) => Subgroup::generated_by(group, &labels(g, group.order())?),
        None => fix_subgroup(group, f),
    })
}

fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for part in s.split('(').map(str::trim).filter(|p| !p.is_empty()) {
        let body = part.strip_suffix(')').ok_or_else(|| anyhow!("unbalanced parentheses in {s:?}"))?;
        let c = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| anyhow!("bad point {t:?}")))
            .collect::<Result<Vec<_>>>()?;
        cycles.push(c);
    }
    let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
    Perm::from_cycles(degree, &refs).ok_or_else(|| anyhow!("{s:?} is not a permutation of degree {degree}"))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("{}: cannot write", p.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn symmetries(csv: &str) -> Result<Vec<Symmetry>> {
    csv.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|e: String| anyhow!(e)))
        .collect()
}

fn base_index(base: usize, q: &NamedQuandle) -> Result<usize> {
    if base == 0 || base > q.quandle.order() {
        bail!("base point {base} is out of range for quandle {} of order {}", q.name, q.quandle.order());
    }
    Ok(base - 1)
}

fn knot_list(args: &KnotArgs) -> Result<Vec<NamedBraid>> {
    match (&args.braid, &args.knots) {
        (Some(w), _) => {
            let braid: BraidWord = w.parse().with_context(|| format!("--braid {w:?}"))?;
            Ok(vec![NamedBraid { name: "braid".into(), braid }])
        }
        (None, Some(path)) => Ok(load(path)?.knots()),
        (None, None) => bail!("one of --braid or --knots is required"),
    }
}

fn check_inn_bound(q: &NamedQuandle, bound: Option<u128>) -> Result<()> {
    if let Some(b) = bound {
        let order = q.quandle.inner_group().order();
        if order > b {
            bail!("quandle {}: |Inn| = {order} exceeds --max-inn-order {b}", q.name);
        }
    }
    Ok(())
}

fn quandle_cmd(cmd: QuandleCmd) -> Result<()> {
    match cmd {
        QuandleCmd::Check { file } => {
            let doc = load(&file)?;
            let qs = doc.quandles();
            if qs.is_empty() {
                bail!("{}: no quandle records", file.display());
            }
            for q in &qs {
                let conn = if q.quandle.is_connected() { "connected" } else { "disconnected" };
                let faithful = if q.quandle.is_faithful() { "faithful" } else { "non-faithful" };
                let prefix = if qs.len() > 1 { format!("{}: ", q.name) } else { String::new() };
                println!("{prefix}OK {conn} {faithful} |Inn|={}", q.quandle.inner_group().order());
            }
        }
        QuandleCmd::Info { file, name, base } => {
            let doc = load(&file)?;
            let q = pick_quandle(&file, &doc, name.as_deref())?;
            let e = base_index(base, &q)?;
            let inner = q.quandle.inner_group();
            let sizes: Vec<String> = q.quandle.fibers().iter().map(|f| f.len().to_string()).collect();
            println!("name {}", q.name);
            println!("order {}", q.quandle.order());
            println!("connected {}", q.quandle.is_connected());
            println!("faithful {}", q.quandle.is_faithful());
            println!("|Inn| {}", inner.order());
            println!("|Inn'| {}", inner.derived_subgroup().order());
            println!("fiber sizes {}", sizes.join(" "));
            if q.quandle.is_connected() {
                let p = end_permutation_p(&q.quandle, e)?;
                let p: Vec<String> = p.iter().map(|x| (x + 1).to_string()).collect();
                println!("p {}", p.join(","));
            }
            if let Some((g, f)) = &q.origin {
                match classify_extension(g, f) {
                    Ok(c) => println!("extension {c}"),
                    Err(err) => println!("extension unavailable: {err}"),
                }
            }
        }
        QuandleCmd::Galex { file, group, auto, fix_order, name, out } => {
            let doc = load(&file)?;
            let (gname, g) = pick_group(&file, &doc, group.as_deref())?;
            let (aname, f) = match fix_order {
                Some(k) => {
                    let f = find_galex_automorphism(g, k)?
                        .ok_or_else(|| anyhow!("{gname} has no connected GAlex with |Fix| = {k}"))?;
                    ("f".to_string(), f)
                }
                None => pick_auto(&file, &doc, &gname, auto.as_deref())?,
            };
            let out_doc = Document {
                records: vec![
                    Record::Group { name: gname.clone(), group: g.clone() },
                    Record::Auto { name: aname.clone(), group: gname.clone(), automorphism: f.clone() },
                    Record::Galex { name, group: gname, auto: aname, quandle: galex(g, &f) },
                ],
            };
            emit(out.as_deref(), &out_doc.to_string())?;
        }
        QuandleCmd::Conj { file, group, element, name, out } => {
            let doc = load(&file)?;
            let names: Vec<&str> = doc
                .records
                .iter()
                .filter_map(|r| matches!(r, Record::PermGroup { .. }).then(|| r.name()))
                .collect();
            let gname = match group {
                Some(g) => g,
                None if names.len() == 1 => names[0].to_string(),
                None => bail!("{}: expected exactly one permgroup record or --group", file.display()),
            };
            let g = doc.perm_group(&gname).ok_or_else(|| anyhow!("{}: no permgroup {gname}", file.display()))?;
            let x = parse_cycles(&element, g.degree())?;
            if !g.contains(&x) {
                bail!("{element} is not in {gname}");
            }
            let (quandle, _) = conj_quandle(&g, &x)?;
            emit(out.as_deref(), &Document { records: vec![Record::Quandle { name, quandle }] }.to_string())?;
        }
        QuandleCmd::Homog { file, sel, sub, name, out } => {
            let doc = load(&file)?;
            let (gname, g) = pick_group(&file, &doc, sel.group.as_deref())?;
            let (_, f) = pick_auto(&file, &doc, &gname, sel.auto.as_deref())?;
            let h = subgroup(g, &f, &sub)?;
            let hom = homogeneous_quandle(g, &h, &f)?;
            emit(out.as_deref(), &Document { records: vec![Record::Quandle { name, quandle: hom.quandle }] }.to_string())?;
        }
    }
    Ok(())
}

fn cocycle_cmd(cmd: CocycleCmd) -> Result<()> {
    match cmd {
        CocycleCmd::Extract { file, sel, sub, out } => {
            let doc = load(&file)?;
            let (gname, g) = pick_group(&file, &doc, sel.group.as_deref())?;
            let (_, f) = pick_auto(&file, &doc, &gname, sel.auto.as_deref())?;
            let lambda = subgroup(g, &f, &sub)?;
            let cov = covering_p_lambda(g, &f, &lambda)?;
            let phi = cov.extract_cocycle()?;
            phi.validate().map_err(|v| anyhow!("extracted cocycle is invalid: {v}"))?;
            let out_doc = Document {
                records: vec![
                    Record::Quandle { name: "base".into(), quandle: cov.homogeneous.quandle.clone() },
                    Record::Group { name: "lambda".into(), group: phi.coefficients().clone() },
                    Record::Cocycle { name: "phi".into(), quandle: "base".into(), group: "lambda".into(), cocycle: phi },
                ],
            };
            emit(out.as_deref(), &out_doc.to_string())?;
        }
        CocycleCmd::Check { file } => {
            let doc = load(&file)?;
            let cs = doc.cocycles();
            if cs.is_empty() {
                bail!("{}: no cocycle records", file.display());
            }
            for (name, phi) in cs {
                phi.validate().map_err(|v| anyhow!("{}: cocycle {name}: {v}", file.display()))?;
                println!(
                    "OK {name} |X|={} |Λ|={}{}",
                    phi.base().order(),
                    phi.coefficients().order(),
                    if phi.coefficients().is_abelian() { " abelian" } else { " non-abelian" }
                );
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Quandle(cmd) => quandle_cmd(cmd),
        Command::Cocycle(cmd) => cocycle_cmd(cmd),
        Command::Psi(args) => {
            let doc = load(&args.quandle)?;
            let q = pick_quandle(&args.quandle, &doc, args.name.as_deref())?;
            check_inn_bound(&q, args.max_inn_order)?;
            let e = base_index(args.base, &q)?;
            for k in knot_list(&args)? {
                let v = psi(&q.quandle, e, &k.braid).with_context(|| format!("quandle {}, knot {}", q.name, k.name))?;
                println!("{}\t{}\tpsi={v}", k.name, q.name);
            }
            Ok(())
        }
        Command::Symmetry { knots: args, symmetries: syms } => {
            let syms = symmetries(&syms)?;
            let doc = load(&args.quandle)?;
            let q = pick_quandle(&args.quandle, &doc, args.name.as_deref())?;
            check_inn_bound(&q, args.max_inn_order)?;
            let e = base_index(args.base, &q)?;
            for k in knot_list(&args)? {
                let r = symmetry_report_for(&q.quandle, e, &k.braid, &syms)
                    .with_context(|| format!("quandle {}, knot {}", q.name, k.name))?;
                let line = ReportLine {
                    knot: k.name.clone(),
                    quandle: q.name.clone(),
                    psi: r.psi.counts,
                    psi_m: r.psi_m.counts,
                    psi_r: r.psi_r.counts,
                    psi_rm: r.psi_rm.counts,
                    distinguished: r.distinguished,
                };
                println!("{line}");
            }
            Ok(())
        }
        Command::Sweep { quandles, knots, base, symmetries: syms, out, workers, max_inn_order } => {
            let dir = resolve(&quandles);
            let mut files: Vec<PathBuf> = fs::read_dir(&dir)
                .with_context(|| format!("{}: cannot list directory", dir.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "qnd"))
                .collect();
            files.sort();
            let mut qs = Vec::new();
            for f in &files {
                qs.extend(load(f)?.quandles());
            }
            if base == 0 {
                bail!("base point labels start at 1");
            }
            let job = SweepJob {
                quandles: qs,
                knots: load(&knots)?.knots(),
                base: base - 1,
                symmetries: symmetries(&syms)?,
                workers,
                max_inn_order,
            };
            let outcome = run_sweep(&job)?;
            for s in &outcome.skipped {
                eprintln!("skipped {s}: |Inn| exceeds --max-inn-order");
            }
            let text: String = outcome.lines.iter().map(|l| format!("{l}\n")).collect();
            emit(out.as_deref(), &text)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_notation() {
        assert_eq!(parse_cycles("(1 2)(3 4 5)", 5).unwrap(), Perm::from_cycles(5, &[&[1, 2], &[3, 4, 5]]).unwrap());
        assert!(parse_cycles("(1 2", 5).is_err());
        assert!(parse_cycles("(1 9)", 5).is_err());
    }

    #[test]
    fn label_lists() {
        assert_eq!(labels("1,3 4", 4).unwrap(), vec![0, 2, 3]);
        assert!(labels("0", 4).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
