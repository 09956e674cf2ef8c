mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lattice_fillings::constructions::{hj_evaluate, hj_expansion, verify_identity, Family, SeifertData};
use lattice_fillings::enumerate::{delta_with_witness, vectors_of_norm};
use lattice_fillings::floer::{d_table, format_rational, KnotSpec, VSequence};
use lattice_fillings::isometry::{find_isometry, RANK_LIMIT};
use lattice_fillings::low_rank;
use lattice_fillings::names::LatticeName;
use lattice_fillings::obstruction::{classify_fillings, Filling, FillingTable};
use lattice_fillings::recognize::{family_aliases, recognize};
use lattice_fillings::roots::root_decomposition;
use lattice_fillings::Lattice;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use report::{gram_json, lattice_from_json, Report};

#[derive(Parser)]
#[command(name = "fillings", version, about = "Definite lattices bounded by surgeries on knots")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LatticeArg {
    /// Lattice name (E8, D5, A2+diag(2), Lambda(2,4), T3, C7, Gamma12, I(1,9), empty), or @PATH.
    lattice: Option<String>,
    /// Read the lattice from a file holding `name:<tag>`, `gram:` plus rows, or JSON with a `gram` field.
    #[arg(long, conflicts_with = "lattice")]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct KnotArgs {
    /// Built-in knot U, T23 or T25, or any label together with --vseq/--g4/--base.
    #[arg(long)]
    knot: String,
    /// V-sequence V0,V1,... of a custom knot.
    #[arg(long)]
    vseq: Option<String>,
    /// Slice-genus bound of a custom knot.
    #[arg(long)]
    g4: Option<u32>,
    /// Comma-separated reduced unimodular fillings of +1 surgery, e.g. `empty,E8`.
    #[arg(long)]
    base: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Rank, determinant, signature, parity, root type, delta and a recognized name.
    Info(LatticeArg),
    /// Delta with a minimising characteristic covector.
    Delta(LatticeArg),
    /// Orthogonal complement of a vector given in lattice coordinates.
    Complement {
        #[command(flatten)]
        lattice: LatticeArg,
        /// Coordinates, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        vector: Vec<i64>,
    },
    /// Test two definite lattices for isomorphism.
    Isom {
        /// First lattice (name or @PATH).
        a: String,
        /// Second lattice (name or @PATH).
        b: String,
    },
    /// Vectors of a given norm, one per sign pair.
    Vectors {
        #[command(flatten)]
        lattice: LatticeArg,
        #[arg(long)]
        norm: i64,
        /// Print at most this many vectors.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// d-invariants of +n surgery and the resulting delta bound.
    Dtable {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        n: u64,
    },
    /// Reduced definite lattices that can bound +n surgery, for n up to --nmax.
    Classify {
        #[command(flatten)]
        knot: KnotArgs,
        #[arg(long)]
        nmax: u64,
        /// Also print the Gram matrix of every kept lattice.
        #[arg(long)]
        gram: bool,
    },
    /// Continued fractions, Seifert plumbings and blow-up identities.
    #[command(subcommand)]
    Construct(Construct),
}

#[derive(Subcommand)]
enum Construct {
    /// Hirzebruch-Jung continued fraction of a/b.
    Hj {
        /// A fraction a/b.
        fraction: String,
    },
    /// Plumbing lattice of Seifert data "b; b1/a1, b2/a2, ...".
    Seifert {
        data: String,
    },
    /// Complement identity for a curve-class family.
    Verify {
        /// T, C, double3, double21, E, A or D.
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] lattice_fillings::Error),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_guard() => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn read_lattice_file(path: &PathBuf) -> Result<Lattice> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        let v: Value = serde_json::from_str(trimmed).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let rows = lattice_from_json(&v).ok_or_else(|| CliError::Input(format!("{}: no gram matrix", path.display())))?;
        return Ok(Lattice::new(rows)?);
    }
    Ok(Lattice::from_text(&text)?)
}

fn parse_lattice(spec: &str) -> Result<Lattice> {
    match spec.strip_prefix('@') {
        Some(path) => read_lattice_file(&PathBuf::from(path)),
        None => Ok(LatticeName::parse(spec)?.make()?),
    }
}

fn load(arg: &LatticeArg) -> Result<Lattice> {
    match (&arg.lattice, &arg.file) {
        (_, Some(path)) => read_lattice_file(path),
        (Some(spec), None) => parse_lattice(spec),
        (None, None) => Err(CliError::Input("give a lattice name or --file".into())),
    }
}

/// Top-level comma split, so `diag(1,2),E8` gives two items.
fn split_names(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.retain(|p| !p.is_empty());
    out
}

fn knot_spec(k: &KnotArgs) -> Result<KnotSpec> {
    let builtin = KnotSpec::builtin(&k.knot).ok();
    if k.vseq.is_none() && k.g4.is_none() && k.base.is_none() {
        return builtin.ok_or_else(|| {
            CliError::Input(format!("unknown knot {:?}; use U, T23, T25, or pass --vseq/--g4", k.knot))
        });
    }
    let v = match (&k.vseq, &builtin) {
        (Some(s), _) => VSequence::parse(s)?,
        (None, Some(b)) => b.v_seq.clone(),
        (None, None) => VSequence::zero(),
    };
    let g4 = match (k.g4, &builtin) {
        (Some(g), _) => g,
        (None, Some(b)) if v.fits_genus(b.g4_bound) => b.g4_bound,
        _ => (0..=64).find(|&g| v.fits_genus(g)).unwrap_or(0),
    };
    let base = match &k.base {
        Some(s) => Some(split_names(s).into_iter().map(parse_lattice).collect::<Result<Vec<_>>>()?),
        None => None,
    };
    Ok(KnotSpec::custom(&k.knot, v, g4, base)?)
}

fn name_of(l: &Lattice) -> Result<Option<String>> {
    if l.rank() > RANK_LIMIT || !l.is_positive_definite() {
        return Ok(None);
    }
    Ok(recognize(l)?.map(|n| n.pretty()))
}

fn signature(l: &Lattice) -> String {
    let s = l.signature();
    if s.nullity == 0 {
        format!("({},{})", s.positive, s.negative)
    } else {
        format!("({},{}) with nullity {}", s.positive, s.negative, s.nullity)
    }
}

fn info(l: &Lattice) -> Result<Report> {
    let mut r = Report::new();
    if let Some(name) = l.name() {
        r.field("lattice", name);
    }
    r.field("rank", l.rank())
        .field("det", l.det().to_string())
        .field("signature", signature(l))
        .field("parity", if l.is_even() { "even" } else { "odd" })
        .field("unimodular", l.is_unimodular());
    if l.is_positive_definite() {
        r.field("root type", root_decomposition(l)?.to_string());
        r.rational("delta", &delta_with_witness(l)?.delta);
        r.field("recognized", name_of(l)?);
        if l.rank() <= RANK_LIMIT {
            let aliases: Vec<String> = family_aliases(l)?.iter().map(|a| a.pretty()).collect();
            if !aliases.is_empty() {
                r.field("aliases", aliases.join(" = "));
            }
        }
        let det = l.det().to_u64().unwrap_or(0);
        if let Some(cells) = low_rank::cells(l.rank(), det) {
            let labels: Vec<&str> = cells.iter().map(|c| c.label).collect();
            r.field("low-rank table", if labels.is_empty() { "no entries".to_string() } else { labels.join(", ") });
        }
    }
    r.gram("gram", l);
    Ok(r)
}

fn filling_json(f: &Filling) -> Value {
    json!({
        "label": f.label(),
        "name": f.name.as_ref().map(|n| n.to_string()),
        "aliases": f.aliases.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
        "delta": format_rational(&f.delta),
        "survived_delta": f.flags.survived_delta,
        "needs_unit_padding": f.flags.needs_unit_padding,
        "rokhlin_audit": f.rokhlin_audit.to_string(),
        "sources": f.sources,
        "gram": gram_json(&f.lattice),
    })
}

fn classify_json(t: &FillingTable) -> Value {
    let rows: Vec<Value> = t
        .rows
        .iter()
        .map(|row| {
            json!({
                "n": row.n,
                "delta_y": format_rational(&row.delta_y),
                "candidates": row.candidates,
                "padding_checked": row.padding_checked,
                "kept": row.kept.iter().map(filling_json).collect::<Vec<_>>(),
                "discarded": row.discarded.iter().map(filling_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "knot": t.spec.label,
        "v_sequence": t.spec.v_seq.to_string(),
        "g4_bound": t.spec.g4_bound,
        "rows": rows,
    })
}

fn classify_text(t: &FillingTable, grams: bool) -> String {
    let mut out = format!(
        "knot: {}\nv-sequence: {}\ng4 bound: {}\nn | reduced lattices | flags\n",
        t.spec.label, t.spec.v_seq, t.spec.g4_bound
    );
    for row in &t.rows {
        let kept: Vec<String> = row.kept.iter().map(Filling::label).collect();
        let mut flags: Vec<String> = row
            .kept
            .iter()
            .filter(|f| f.flags.needs_unit_padding)
            .map(|f| format!("{} needs a unit summand", f.label()))
            .collect();
        flags.extend(row.discarded.iter().map(|f| format!("delta excludes {}", f.label())));
        if !row.padding_checked {
            flags.push("padding unchecked".into());
        }
        out.push_str(format!("{} | {} | {}\n", row.n, kept.join("; "), flags.join("; ")).trim_end());
        out.push('\n');
    }
    if grams {
        for row in &t.rows {
            for f in &row.kept {
                out.push_str(&format!("\nn={} {}:\n", row.n, f.label()));
                for line in f.lattice.gram_rows() {
                    let line: Vec<String> = line.iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!("  {}\n", line.join(" ")));
                }
            }
        }
    }
    out
}

fn parse_fraction(s: &str) -> Result<(i64, i64)> {
    let bad = || CliError::Input(format!("expected a fraction a/b, got {s:?}"));
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn construct(c: &Construct) -> Result<Report> {
    let mut r = Report::new();
    match c {
        Construct::Hj { fraction } => {
            let (a, b) = parse_fraction(fraction)?;
            let t = hj_expansion(a, b)?;
            r.field("fraction", format!("{a}/{b}"))
                .field("expansion", json!(t))
                .rational("evaluates to", &hj_evaluate(&t)?);
        }
        Construct::Seifert { data } => {
            let s = SeifertData::parse(data)?;
            let g = s.plumbing()?;
            let l = g.gram();
            let vertices: Vec<String> = g.vertices.iter().map(|(id, w)| format!("{id}:{w}")).collect();
            let edges: Vec<String> = g.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            r.field("data", s.to_string())
                .field("normalized", s.normalized().to_string())
                .rational("euler", &s.euler())
                .field("vertices", vertices.join(" "))
                .field("edges", edges.join(" "))
                .field("det", l.det().to_string())
                .field("recognized", name_of(&l)?)
                .gram("gram", &l);
        }
        Construct::Verify { family, n } => {
            let rep = verify_identity(Family::parse(family)?, *n)?;
            r.field("family", rep.family.to_string())
                .field("n", rep.n)
                .field("ambient", rep.ambient)
                .field("vector", rep.vector)
                .field("norm", rep.norm)
                .field("expected", rep.expected)
                .field("isomorphic", rep.isomorphic)
                .field("recognized", name_of(&rep.complement)?)
                .gram("complement", &rep.complement);
        }
    }
    Ok(r)
}

fn run(cli: &Cli) -> Result<String> {
    let report = match &cli.command {
        Command::Info(arg) => info(&load(arg)?)?,
        Command::Delta(arg) => {
            let l = load(arg)?;
            let d = delta_with_witness(&l)?;
            let witness: Vec<String> = d.witness.coords().iter().map(format_rational).collect();
            let mut r = Report::new();
            r.rational("delta", &d.delta).rational("min norm", &d.min_norm).field("witness", json!(witness));
            r
        }
        Command::Complement { lattice, vector } => {
            let l = load(lattice)?;
            let c = l.complement(vector)?;
            let mut r = Report::new();
            r.field("vector", json!(vector))
                .field("norm", l.norm(vector)?)
                .field("pairing gcd", l.pairing_gcd(vector)?)
                .field("rank", c.rank())
                .field("det", c.det().to_string())
                .field("recognized", name_of(&c)?)
                .gram("gram", &c);
            r
        }
        Command::Isom { a, b } => {
            let (la, lb) = (parse_lattice(a)?, parse_lattice(b)?);
            let iso = find_isometry(&la, &lb)?;
            let mut r = Report::new();
            r.field("isomorphic", iso.is_some());
            if let Some(w) = iso {
                r.field("isometry", json!(w.matrix));
            }
            r
        }
        Command::Vectors { lattice, norm, limit } => {
            let l = load(lattice)?;
            let slice = vectors_of_norm(&l, *norm)?;
            let shown: Vec<Value> =
                slice.vectors.iter().take(limit.unwrap_or(usize::MAX)).map(|v| json!(v.coords())).collect();
            let mut r = Report::new();
            r.field("norm", *norm).field("pairs", slice.len()).field("vectors", shown);
            r
        }
        Command::Dtable { knot, n } => {
            let spec = knot_spec(knot)?;
            let t = d_table(&spec, *n)?;
            let mut r = Report::new();
            r.field("knot", spec.label.clone()).field("v-sequence", spec.v_seq.to_string()).field("n", *n);
            if cli.json {
                let d: Vec<String> = t.d.iter().map(format_rational).collect();
                r.field("d", json!(d));
            } else {
                for (i, d) in t.d.iter().enumerate() {
                    r.rational(&format!("i={i}"), d);
                }
            }
            r.rational("delta", &t.delta());
            r
        }
        Command::Classify { knot, nmax, gram } => {
            let table = classify_fillings(&knot_spec(knot)?, *nmax)?;
            return Ok(if cli.json {
                serde_json::to_string_pretty(&classify_json(&table)).expect("serializable") + "\n"
            } else {
                classify_text(&table, *gram)
            });
        }
        Command::Construct(c) => construct(c)?,
    };
    Ok(report.render(cli.json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
