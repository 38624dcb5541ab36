//! Command-line front end: file loading, subcommands and exit codes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use contraaec::axioms::{
    check_tcontr, check_tcontr_rel, AsphStatus, AsphSweep, AxiomError, Bounds, ExactCriterion, InjReport, ModelReport, Overall,
    Refutation, RelativeReport,
};
use contraaec::fincat::{involution_pair, parallel_pair, suspension, FinCat, SuspensionBase};
use contraaec::format::{
    category_to_json, parse_category, parse_presheaf_file, presheaf_to_json, BaseRef, FormatError, PresheafFile,
};
use contraaec::nervehom::{homology, nerve, HomologyGroup};
use contraaec::presheaf::generate::{directed_tree, generate_amalgam, labeled_tree, undirected_tree};
use contraaec::presheaf::{decompose_suspension, pushout, Presheaf, PresheafMorphism};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_BOUNDS: i32 = 4;
pub const EXIT_UNDETERMINED: i32 = 5;

#[derive(Parser)]
#[command(name = "contraaec", version, about = "Finite categories, presheaves and contractibility model checks")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Dirtree,
    Undirtree,
    LabeledTree,
    Amalgam,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a category or presheaf document satisfies its axioms
    Validate { path: PathBuf },
    /// Integral homology of the nerve of a category
    NerveHomology {
        category: PathBuf,
        /// Number of degrees to report, starting at 0
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decide whether a presheaf is a model of the contractibility theory
    CheckModel {
        category: PathBuf,
        presheaf: PathBuf,
        #[arg(long, default_value_t = 2)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
        #[arg(long, default_value_t = 2)]
        l_max: usize,
        #[arg(long, default_value_t = 2)]
        acyclic_dim: usize,
        #[arg(long, default_value_t = 100_000)]
        node_budget: u64,
        #[arg(long, default_value_t = 50_000)]
        max_lifts: usize,
        /// Check the relative theory of a suspension over this category
        #[arg(long, value_name = "C0")]
        relative: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Write the suspension of a category
    Suspend { input: PathBuf, output: PathBuf },
    /// Coloring graph of a presheaf on a suspension
    ColoringGraph {
        category: PathBuf,
        presheaf: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Pushout of two presheaf maps out of a common apex
    Pushout {
        category: PathBuf,
        apex: PathBuf,
        left: PathBuf,
        right: PathBuf,
        /// Document with `left` and `right` maps, each object → element → element
        legs: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded example presheaf
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Refer to this category file instead of inlining the base
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Bounds(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse { .. } => EXIT_IO,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Bounds(_) => EXIT_BOUNDS,
        }
    }

    fn format(path: &Path, e: FormatError) -> CliError {
        match e {
            FormatError::Parse(source) => CliError::Parse {
                path: path.to_path_buf(),
                source,
            },
            other => CliError::Invalid(format!("{}: {other}", path.display())),
        }
    }
}

impl From<AxiomError> for CliError {
    fn from(e: AxiomError) -> CliError {
        match e {
            AxiomError::Bounds(m) => CliError::Bounds(m),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    })
}

fn load_category(path: &Path) -> Result<FinCat, CliError> {
    parse_category(&read(path)?).map_err(|e| CliError::format(path, e))
}

/// A presheaf document together with its resolved base. Path bases are
/// relative to the document's directory.
fn load_presheaf(path: &Path) -> Result<(PresheafFile, Presheaf), CliError> {
    let file = parse_presheaf_file(&read(path)?).map_err(|e| CliError::format(path, e))?;
    let base = match &file.base {
        BaseRef::Inline(spec) => FinCat::from_spec(spec).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?,
        BaseRef::Path(p) => load_category(&path.parent().unwrap_or(Path::new(".")).join(p))?,
    };
    let x = Presheaf::from_data(Arc::new(base), &file.data())
        .map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    Ok((file, x))
}

/// Loads a presheaf and checks that its base is the given category.
fn load_presheaf_over(path: &Path, c: &FinCat) -> Result<(PresheafFile, Presheaf), CliError> {
    let (file, x) = load_presheaf(path)?;
    if **x.base() != *c {
        return Err(CliError::Invalid(format!(
            "{}: the presheaf's base differs from the given category",
            path.display()
        )));
    }
    Ok((file, x))
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Validate { path } => validate(&path, out),
        Command::NerveHomology {
            category,
            max_dim,
            format,
        } => nerve_homology(&category, max_dim, format, out),
        Command::CheckModel {
            category,
            presheaf,
            n_max,
            k_max,
            l_max,
            acyclic_dim,
            node_budget,
            max_lifts,
            relative,
            format,
        } => {
            let bounds = Bounds {
                n_max,
                k_max,
                l_max,
                acyclic_dim,
                node_budget,
                max_lifts,
                keep_witnesses: false,
            };
            check_model(&category, &presheaf, &bounds, relative.as_deref(), format, out)
        }
        Command::Suspend { input, output } => {
            let c = load_category(&input)?;
            write_file(&output, &category_to_json(&suspension(&c).category))?;
            Ok(EXIT_OK)
        }
        Command::ColoringGraph {
            category,
            presheaf,
            format,
        } => coloring_graph(&category, &presheaf, format, out),
        Command::Pushout {
            category,
            apex,
            left,
            right,
            legs,
            output,
        } => pushout_cmd(&category, [&apex, &left, &right], &legs, output.as_deref(), out),
        Command::Gen {
            kind,
            size,
            seed,
            base,
            output,
        } => gen(kind, size, seed, base, output.as_deref(), out),
    }
}

fn validate(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = read(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })?;
    if value.get("carriers").is_some() {
        let (_, x) = load_presheaf(path)?;
        emit(
            out,
            &format!(
                "ok: presheaf with {} elements over {} objects\n",
                x.num_elements(),
                x.base().num_objects()
            ),
        )?;
    } else {
        let c = load_category(path)?;
        emit(
            out,
            &format!("ok: category with {} objects and {} morphisms\n", c.num_objects(), c.num_morphisms()),
        )?;
    }
    Ok(EXIT_OK)
}

fn homology_line(label: &str, d: usize, g: &HomologyGroup) -> String {
    format!("H_{d}{label} = {g}\n")
}

fn homology_record(d: usize, g: &HomologyGroup) -> String {
    format!("{}\n", json!({"record": "homology", "degree": d, "betti": g.betti, "torsion": g.torsion}))
}

fn nerve_homology(path: &Path, max_dim: usize, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let c = load_category(path)?;
    if max_dim == 0 {
        return Err(CliError::Bounds("--max-dim must be at least 1".into()));
    }
    let groups = homology(&nerve(&c, max_dim), max_dim - 1).map_err(|e| CliError::Bounds(e.to_string()))?;
    for (d, g) in groups.iter().enumerate() {
        let line = match format {
            Format::Text => homology_line("", d, g),
            Format::Records => homology_record(d, g),
        };
        emit(out, &line)?;
    }
    Ok(EXIT_OK)
}

fn describe(r: &Refutation) -> String {
    match r {
        Refutation::Inj(v) => format!(
            "Inj fails at ({}, {}): {} and {} act equally",
            v.object, v.element, v.sigma, v.sigma_prime
        ),
        Refutation::Homology { degree, group } => format!("H_{degree}(elements) = {group}"),
        Refutation::EmptyElements => "the category of elements is empty".into(),
        Refutation::Disconnected { from, to } => format!("{from} and {to} lie in different components"),
        Refutation::EssentialLoop { word } => format!("essential loop {}", word.join(" ")),
        Refutation::NotATree => "the one-dimensional category of elements is not a tree".into(),
        Refutation::ColoringGraphNotTree => "the coloring graph is not a tree".into(),
        Refutation::ComponentNotModel { index } => format!("reduct component {index} is not a model"),
    }
}

fn overall_code(o: Overall) -> i32 {
    match o {
        Overall::Model => EXIT_OK,
        Overall::NotModel => EXIT_REFUTED,
        Overall::Undetermined => EXIT_UNDETERMINED,
    }
}

fn overall_name(o: Overall) -> &'static str {
    match o {
        Overall::Model => "model",
        Overall::NotModel => "not a model",
        Overall::Undetermined => "undetermined",
    }
}

fn inj_lines(inj: &InjReport, indent: &str) -> String {
    if inj.passes() {
        return format!("{indent}inj: pass\n");
    }
    let mut s = format!("{indent}inj: fail\n");
    for v in &inj.violations {
        s += &format!("{indent}  ({}, {}): {} = {}\n", v.object, v.element, v.sigma, v.sigma_prime);
    }
    s
}

fn sweep_lines(sweep: &AsphSweep, indent: &str) -> String {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for inst in &sweep.instances {
        let key = match inst.verdict.status {
            AsphStatus::HoldsWithin { .. } => "holds",
            AsphStatus::Vacuous => "vacuous",
            AsphStatus::RefutedExactly => "refuted",
            AsphStatus::ExhaustedBound => "exhausted",
        };
        *counts.entry(key).or_default() += 1;
    }
    let vacuous = match sweep.vacuous_instances() {
        Some(v) => v.to_string(),
        None => "uncounted".into(),
    };
    let summary: Vec<String> = counts.iter().map(|(k, v)| format!("{v} {k}")).collect();
    let mut s = format!(
        "{indent}asph n={} k={}: {} with lifts ({}), {} vacuous{}\n",
        sweep.n,
        sweep.k,
        sweep.instances.len(),
        if summary.is_empty() { "none".to_string() } else { summary.join(", ") },
        vacuous,
        if sweep.lifts_truncated { ", lift enumeration truncated" } else { "" }
    );
    for inst in &sweep.instances {
        for stuck in &inst.verdict.stuck {
            if stuck.refutation.is_none() {
                s += &format!(
                    "{indent}  stuck: F = [{}], lift = [{}]{}\n",
                    inst.functor_objects.join(","),
                    stuck.lift.join(","),
                    if stuck.budget_hit { " (node budget hit)" } else { "" }
                );
            }
        }
    }
    s
}

fn report_text(r: &ModelReport, indent: &str) -> String {
    let mut s = inj_lines(&r.inj, indent);
    for (d, g) in r.homology.iter().enumerate() {
        s += indent;
        s += &homology_line("(elements)", d, g);
    }
    if r.asph_skipped {
        s += &format!("{indent}asph: skipped, Inj already fails\n");
    }
    for sweep in &r.asph {
        s += &sweep_lines(sweep, indent);
    }
    for x in &r.refutations {
        s += &format!("{indent}witness: {}\n", describe(x));
    }
    s
}

fn verdict_line(overall: Overall, exact: Option<ExactCriterion>) -> String {
    let reason = match exact {
        Some(ExactCriterion::OneDimensionalTree) => " (one-dimensional tree)",
        Some(ExactCriterion::TerminalObject) => " (terminal object)",
        Some(ExactCriterion::Dismantlable) => " (dismantlable)",
        Some(ExactCriterion::ColoringTree) => " (coloring graph is a tree)",
        None => "",
    };
    format!("verdict: {}{reason}\n", overall_name(overall))
}

fn report_records(r: &ModelReport, component: Option<usize>) -> String {
    let mut lines = vec![json!({"record": "inj", "component": component, "passes": r.inj.passes(), "violations": r.inj.violations})];
    for (d, g) in r.homology.iter().enumerate() {
        lines.push(json!({"record": "homology", "component": component, "degree": d, "betti": g.betti, "torsion": g.torsion}));
    }
    for sweep in &r.asph {
        lines.push(json!({
            "record": "asph_sweep", "component": component, "n": sweep.n, "k": sweep.k,
            "instances": sweep.instances.len(), "functors": sweep.functor_count, "truncated": sweep.lifts_truncated,
        }));
        for inst in &sweep.instances {
            lines.push(json!({
                "record": "asph", "component": component, "n": inst.n, "k": inst.k,
                "functor": inst.functor_objects, "verdict": inst.verdict,
            }));
        }
    }
    for x in &r.refutations {
        lines.push(json!({"record": "refutation", "component": component, "refutation": x}));
    }
    lines.iter().map(|l| format!("{l}\n")).collect()
}

fn check_model(
    cat: &Path,
    psh: &Path,
    bounds: &Bounds,
    relative: Option<&Path>,
    format: Format,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let c = load_category(cat)?;
    let (_, x) = load_presheaf_over(psh, &c)?;
    match relative {
        None => {
            let r = check_tcontr(&c, &x, bounds)?;
            let text = match format {
                Format::Text => report_text(&r, "") + &verdict_line(r.overall, r.exact),
                Format::Records => {
                    report_records(&r, None) + &format!("{}\n", json!({"record": "verdict", "overall": r.overall, "exact": r.exact}))
                }
            };
            emit(out, &text)?;
            Ok(overall_code(r.overall))
        }
        Some(c0_path) => {
            let c0 = load_category(c0_path)?;
            let r = check_tcontr_rel(&c, Some(&c0), &x, bounds)?;
            emit(out, &relative_report(&r, format))?;
            Ok(overall_code(r.overall))
        }
    }
}

fn relative_report(r: &RelativeReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = inj_lines(&r.inj, "");
            for (i, comp) in r.components.iter().enumerate() {
                s += &format!("component {i}: {}\n", overall_name(comp.overall));
                s += &report_text(comp, "  ");
            }
            s += &format!(
                "coloring graph: {} vertices, {} edges, {}\n",
                r.coloring_graph.num_vertices(),
                r.coloring_graph.edges.len(),
                if r.coloring_graph_is_tree { "a tree" } else { "not a tree" }
            );
            for x in &r.refutations {
                s += &format!("witness: {}\n", describe(x));
            }
            s + &verdict_line(r.overall, r.exact)
        }
        Format::Records => {
            let mut s = format!("{}\n", json!({"record": "inj", "passes": r.inj.passes(), "violations": r.inj.violations}));
            for (i, comp) in r.components.iter().enumerate() {
                s += &report_records(comp, Some(i));
                s += &format!("{}\n", json!({"record": "component", "component": i, "overall": comp.overall}));
            }
            s += &format!(
                "{}\n",
                json!({"record": "coloring_graph", "graph": r.coloring_graph, "is_tree": r.coloring_graph_is_tree})
            );
            for x in &r.refutations {
                s += &format!("{}\n", json!({"record": "refutation", "refutation": x}));
            }
            s + &format!("{}\n", json!({"record": "verdict", "overall": r.overall, "exact": r.exact}))
        }
    }
}

fn coloring_graph(cat: &Path, psh: &Path, format: Format, out: &mut dyn Write) -> Result<i32, CliError> {
    let c = load_category(cat)?;
    let sb = SuspensionBase::recognize(&c).map_err(|e| CliError::Invalid(e.to_string()))?;
    let (_, x) = load_presheaf_over(psh, &c)?;
    let d = decompose_suspension(&sb, &x).map_err(|e| CliError::Invalid(e.to_string()))?;
    let g = d.coloring_graph();
    let text = match format {
        Format::Text => {
            let mut s = format!("vertices: {}\n", (0..g.num_vertices()).map(|v| g.vertex_name(v)).collect::<Vec<_>>().join(" "));
            for (a, b) in g.undirected_edges() {
                s += &format!("{} -- {}\n", g.vertex_name(a), g.vertex_name(b));
            }
            s
        }
        Format::Records => g
            .undirected_edges()
            .iter()
            .map(|&(a, b)| format!("{}\n", json!({"record": "edge", "from": g.vertex_name(a), "to": g.vertex_name(b)})))
            .collect(),
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

/// A map document: object → source element → target element.
type MapDoc = BTreeMap<String, BTreeMap<String, String>>;

fn morphism_from_doc(doc: &MapDoc, source: &Presheaf, target: &Presheaf, which: &str) -> Result<PresheafMorphism, CliError> {
    let base = source.base();
    let mut components = Vec::new();
    for o in base.object_ids() {
        let name = base.obj_name(o);
        let table = doc.get(name);
        let mut row = Vec::new();
        for elem in source.carrier(o) {
            let image = table
                .and_then(|t| t.get(elem))
                .ok_or_else(|| CliError::Invalid(format!("{which} leg: no image for `{elem}` at `{name}`")))?;
            let idx = target
                .element_index(o, image)
                .ok_or_else(|| CliError::Invalid(format!("{which} leg: `{image}` is not an element at `{name}`")))?;
            row.push(idx);
        }
        components.push(row);
    }
    PresheafMorphism::new(source.clone(), target.clone(), components)
        .map_err(|e| CliError::Invalid(format!("{which} leg: {e}")))
}

fn pushout_cmd(
    cat: &Path,
    [apex, left, right]: [&Path; 3],
    legs: &Path,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let c = load_category(cat)?;
    let (apex_file, a) = load_presheaf_over(apex, &c)?;
    let (_, b) = load_presheaf_over(left, &c)?;
    let (_, d) = load_presheaf_over(right, &c)?;
    let docs: BTreeMap<String, MapDoc> = serde_json::from_str(&read(legs)?).map_err(|source| CliError::Parse {
        path: legs.to_path_buf(),
        source,
    })?;
    let leg = |key: &str, target: &Presheaf| match docs.get(key) {
        Some(doc) => morphism_from_doc(doc, &a, target, key),
        None => Err(CliError::Invalid(format!("{}: missing `{key}` map", legs.display()))),
    };
    let (f, g) = (leg("left", &b)?, leg("right", &d)?);
    let po = pushout(&f, &g).map_err(|e| CliError::Invalid(e.to_string()))?;
    let text = presheaf_to_json(&po.object, apex_file.base);
    match output {
        Some(p) => write_file(p, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn gen(
    kind: GenKind,
    size: usize,
    seed: u64,
    base: Option<String>,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = match kind {
        GenKind::Dirtree | GenKind::Undirtree if size == 0 => {
            return Err(CliError::Invalid("trees need at least one vertex".into()))
        }
        GenKind::Dirtree => directed_tree(size - 1, &mut rng),
        GenKind::Undirtree => undirected_tree(size - 1, &mut rng),
        GenKind::LabeledTree => labeled_tree(size, 3, &mut rng),
        GenKind::Amalgam => generate_amalgam(&Arc::new(parallel_pair()), size, seed),
    };
    let base_ref = match base {
        Some(p) => BaseRef::Path(p),
        None => BaseRef::Inline(x.base().to_spec()),
    };
    let text = presheaf_to_json(&x, base_ref);
    match output {
        Some(p) => write_file(p, &text)?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

/// The categories shipped with the examples.
pub fn bundled_categories() -> Vec<(&'static str, FinCat)> {
    vec![
        ("dirtree-cat.json", parallel_pair()),
        ("undirtree-cat.json", involution_pair()),
        ("s2-cat.json", (*suspension(&parallel_pair()).category).clone()),
    ]
}
