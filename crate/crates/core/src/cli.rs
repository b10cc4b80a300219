//! Command implementations behind the `margind` binary.
//!
//! [`run`] parses an argument list and returns the captured output and exit
//! code, so every command can be exercised without spawning a process.
//! Exit codes: 0 success, 1 a negative answer (non-member, failed check),
//! 2 usage or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::cdf::{maximal_equations, param_matrix, verify_model, StateShape};
use crate::census::{class_census, generators_text, table2, CensusRow, ModelClass};
use crate::closure::{closure, member, SplitClosedIdeal, StatementSet, StatementSetJson};
use crate::error::{Error, Result};
use crate::markov::{
    graph_ideal, graph_statements, is_complete_multipartite, models_coincide, sigma_of_graph,
    simplicial_ideal, simplicial_statements, BidirectedGraph, SimplicialComplex,
};
use crate::partition::PartialSetPartition;
use crate::toric::{projective_dimension, toric_degree};

/// Version tag of every JSON document the tool emits.
pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "margind",
    version,
    about = "Marginal independence models: closure, equations, geometry, census"
)]
pub struct Cli {
    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true, env = "MARGIND_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the split closure of a statement set and its maximal generators.
    Closure(ModelArgs),
    /// Decide whether a statement lies in the split closure (exit 0 yes, 1 no).
    Member {
        #[command(flatten)]
        model: ModelArgs,
        /// Statement to test, e.g. "1|2|3|4".
        #[arg(long)]
        query: String,
    },
    /// Print the factorization equations of the model in cdf coordinates.
    Generators {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Print the parametrization matrix.
    Matrix {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Dimension and degree of the model's toric variety.
    Geometry {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        shape: ShapeArgs,
    },
    /// Statements and model of a bidirected graph.
    Graph {
        #[arg(short = 'n')]
        n: usize,
        /// Edges such as "1-2,2-3".
        #[arg(long, default_value = "")]
        edges: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Statements and model of a simplicial complex.
    Simplicial {
        #[arg(short = 'n')]
        n: usize,
        /// Maximal faces such as "12,13,23".
        #[arg(long, default_value = "")]
        faces: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Count models (table1) or list models up to symmetry with their geometry (table2).
    Census {
        #[arg(short = 'n')]
        n: usize,
        /// Model class; all classes when omitted.
        #[arg(long)]
        class: Option<ClassArg>,
        /// Report only the count up to relabeling.
        #[arg(long)]
        up_to_symmetry: bool,
        #[arg(long, value_enum, default_value_t = Emit::Table1)]
        emit: Emit,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check the equations and the exactness of a model on random points.
    Verify {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Parameter draws used for the vanishing check.
        #[arg(long, default_value_t = 10)]
        draws: usize,
    },
}

#[derive(Args, Debug)]
pub struct ModelArgs {
    /// Number of variables; read from the JSON input when omitted there.
    #[arg(short = 'n')]
    pub n: Option<usize>,
    /// Statements such as "1|23,2|3".
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    pub gens: Option<String>,
    /// JSON statement file `{"n":3,"statements":[[[1],[2,3]]]}`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output format; `geometry` defaults to json, everything else to text.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl ModelArgs {
    fn format_or(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

#[derive(Args, Debug)]
pub struct ShapeArgs {
    /// State-space sizes such as "2,2,3"; binary when omitted.
    #[arg(long)]
    pub states: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Table1,
    Table2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    General,
    Graphical,
    Simplicial,
    Both,
}

impl From<ClassArg> for ModelClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::General => ModelClass::General,
            ClassArg::Graphical => ModelClass::Graphical,
            ClassArg::Simplicial => ModelClass::Simplicial,
            ClassArg::Both => ModelClass::Both,
        }
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn with_code(stdout: String, code: i32) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    fn usage(message: String) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: message,
            code: 2,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            return if code == 0 {
                Outcome::ok(rendered)
            } else {
                Outcome::usage(rendered)
            };
        }
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        builder = builder.num_threads(t);
    }
    let pool = match builder.build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::usage(format!("error: cannot start thread pool: {e}\n")),
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn load_statements(args: &ModelArgs) -> Result<StatementSet> {
    match (&args.gens, &args.input) {
        (Some(text), None) => {
            let n = args
                .n
                .ok_or_else(|| Error::Input("-n is required with --gens".into()))?;
            StatementSet::parse(text, n)
        }
        (None, Some(path)) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
            let json: StatementSetJson = serde_json::from_str(&raw).map_err(|e| {
                Error::Input(format!("malformed statement file {}: {e}", path.display()))
            })?;
            if let Some(n) = args.n.filter(|&n| n != json.n) {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: json.n,
                });
            }
            StatementSet::from_json(&json)
        }
        _ => Err(Error::Input(
            "give exactly one of --gens and --input".into(),
        )),
    }
}

fn load_shape(args: &ShapeArgs, n: usize) -> Result<StateShape> {
    match &args.states {
        None => Ok(StateShape::binary(n)),
        Some(text) => {
            let shape = StateShape::parse(text)?;
            if shape.n() != n {
                return Err(Error::Shape(format!(
                    "{} sizes given for n = {n}",
                    shape.n()
                )));
            }
            Ok(shape)
        }
    }
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Input(format!("--format {format:?} is not available for `{command}`").to_lowercase())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn texts(ideal: &SplitClosedIdeal) -> Vec<String> {
    ideal.iter().map(PartialSetPartition::to_text).collect()
}

fn generator_texts(ideal: &SplitClosedIdeal) -> Vec<String> {
    ideal
        .maximal_generators()
        .iter()
        .map(PartialSetPartition::to_text)
        .collect()
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Closure(args) => cmd_closure(args),
        Command::Member { model, query } => cmd_member(model, query),
        Command::Generators { model, shape } => cmd_generators(model, shape),
        Command::Matrix { model, shape } => cmd_matrix(model, shape),
        Command::Geometry { model, shape } => cmd_geometry(model, shape),
        Command::Graph { n, edges, format } => cmd_graph(*n, edges, *format),
        Command::Simplicial { n, faces, format } => cmd_simplicial(*n, faces, *format),
        Command::Census {
            n,
            class,
            up_to_symmetry,
            emit,
            format,
        } => cmd_census(
            *n,
            class.map(ModelClass::from),
            *up_to_symmetry,
            *emit,
            *format,
        ),
        Command::Verify {
            model,
            shape,
            seed,
            draws,
        } => cmd_verify(model, shape, *seed, *draws),
    }
}

fn cmd_closure(args: &ModelArgs) -> Result<Outcome> {
    let gens = load_statements(args)?;
    let ideal = closure(&gens);
    match args.format_or(Format::Text) {
        Format::Text => {
            let mut out = format!("elements: {}\n", ideal.len());
            for e in texts(&ideal) {
                writeln!(out, "  {e}").unwrap();
            }
            writeln!(
                out,
                "maximal generators: {}",
                generators_text(&ideal.maximal_generators())
            )
            .unwrap();
            Ok(Outcome::ok(out))
        }
        Format::Json => Ok(Outcome::ok(to_json(&json!({
            "schema": SCHEMA,
            "n": ideal.n(),
            "size": ideal.len(),
            "elements": texts(&ideal),
            "maximal_generators": generator_texts(&ideal),
        })))),
        other => Err(unsupported(other, "closure")),
    }
}

fn cmd_member(args: &ModelArgs, query: &str) -> Result<Outcome> {
    let gens = load_statements(args)?;
    let sigma = PartialSetPartition::parse(query, gens.n())?;
    if sigma.num_blocks() < 2 {
        return Err(Error::TrivialStatement(sigma.to_text()));
    }
    let yes = member(&sigma, &gens);
    let code = if yes { 0 } else { 1 };
    match args.format_or(Format::Text) {
        Format::Text => Ok(Outcome::with_code(
            format!("{}\n", if yes { "yes" } else { "no" }),
            code,
        )),
        Format::Json => Ok(Outcome::with_code(
            to_json(&json!({ "schema": SCHEMA, "query": sigma.to_text(), "member": yes })),
            code,
        )),
        other => Err(unsupported(other, "member")),
    }
}

fn cmd_generators(args: &ModelArgs, shape: &ShapeArgs) -> Result<Outcome> {
    let gens = load_statements(args)?;
    let shape = load_shape(shape, gens.n())?;
    let equations = maximal_equations(&closure(&gens), &shape);
    match args.format_or(Format::Text) {
        Format::Text => {
            let mut out = String::new();
            for e in &equations {
                writeln!(out, "{}", e.render(&shape)).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Format::Json => {
            let list: Vec<_> = equations
                .iter()
                .map(|e| {
                    let j = e.to_json();
                    json!({ "text": e.render(&shape), "lead": j.lead, "factors": j.factors })
                })
                .collect();
            Ok(Outcome::ok(to_json(&json!({
                "schema": SCHEMA,
                "states": shape.sizes(),
                "equations": list,
            }))))
        }
        other => Err(unsupported(other, "generators")),
    }
}

fn cmd_matrix(args: &ModelArgs, shape: &ShapeArgs) -> Result<Outcome> {
    let gens = load_statements(args)?;
    let shape = load_shape(shape, gens.n())?;
    let a = param_matrix(&closure(&gens), &shape);
    Ok(Outcome::ok(match args.format_or(Format::Text) {
        Format::Text => a.to_string(),
        Format::Csv => a.to_csv(),
        Format::Plain => a.to_plain(),
        Format::Json => to_json(&json!({
            "schema": SCHEMA,
            "rows": (0..a.num_rows()).map(|r| a.row_label(r)).collect::<Vec<_>>(),
            "columns": (0..a.num_columns()).map(|c| a.column_label(c)).collect::<Vec<_>>(),
            "entries": a.entries(),
        })),
    }))
}

#[derive(Serialize)]
struct GeometryJson {
    schema: u32,
    dimension: usize,
    degree: u64,
    num_columns: usize,
    num_rows: usize,
}

fn cmd_geometry(args: &ModelArgs, shape: &ShapeArgs) -> Result<Outcome> {
    let gens = load_statements(args)?;
    let shape = load_shape(shape, gens.n())?;
    let a = param_matrix(&closure(&gens), &shape);
    let (dimension, degree) = (projective_dimension(&a), toric_degree(&a));
    match args.format_or(Format::Json) {
        Format::Json => {
            let doc = GeometryJson {
                schema: SCHEMA,
                dimension,
                degree: degree as u64,
                num_columns: a.num_columns(),
                num_rows: a.num_rows(),
            };
            Ok(Outcome::ok(format!(
                "{}\n",
                serde_json::to_string(&doc).expect("serializable")
            )))
        }
        Format::Text => Ok(Outcome::ok(format!(
            "dimension={dimension} degree={degree} columns={} rows={}\n",
            a.num_columns(),
            a.num_rows()
        ))),
        other => Err(unsupported(other, "geometry")),
    }
}

fn model_summary(statements: &StatementSet, ideal: &SplitClosedIdeal) -> serde_json::Value {
    json!({
        "statements": statements.iter().map(PartialSetPartition::to_text).collect::<Vec<_>>(),
        "ideal_size": ideal.len(),
        "maximal_generators": generator_texts(ideal),
    })
}

fn cmd_graph(n: usize, edges: &str, format: Format) -> Result<Outcome> {
    let g = BidirectedGraph::parse(edges, n)?;
    let statements = graph_statements(&g);
    let ideal = graph_ideal(&g);
    let sigma = sigma_of_graph(&g);
    let coincide = models_coincide(&g);
    let multipartite = is_complete_multipartite(&g);
    match format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "statements: {}", generators_text(&statements)).unwrap();
            writeln!(
                out,
                "maximal generators: {}",
                generators_text(&ideal.maximal_generators())
            )
            .unwrap();
            writeln!(out, "ideal size: {}", ideal.len()).unwrap();
            writeln!(out, "associated complex: {}", sigma.to_text()).unwrap();
            writeln!(out, "models coincide: {coincide}").unwrap();
            writeln!(out, "complete multipartite: {multipartite}").unwrap();
            Ok(Outcome::ok(out))
        }
        Format::Json => {
            let mut doc = model_summary(&statements, &ideal);
            doc["schema"] = json!(SCHEMA);
            doc["edges"] = json!(g.to_text());
            doc["associated_complex"] = json!(sigma.to_text());
            doc["models_coincide"] = json!(coincide);
            doc["complete_multipartite"] = json!(multipartite);
            Ok(Outcome::ok(to_json(&doc)))
        }
        other => Err(unsupported(other, "graph")),
    }
}

fn cmd_simplicial(n: usize, faces: &str, format: Format) -> Result<Outcome> {
    let s = SimplicialComplex::parse(faces, n)?;
    let statements = simplicial_statements(&s);
    let ideal = simplicial_ideal(&s);
    match format {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "statements: {}", generators_text(&statements)).unwrap();
            writeln!(
                out,
                "maximal generators: {}",
                generators_text(&ideal.maximal_generators())
            )
            .unwrap();
            writeln!(out, "ideal size: {}", ideal.len()).unwrap();
            Ok(Outcome::ok(out))
        }
        Format::Json => {
            let mut doc = model_summary(&statements, &ideal);
            doc["schema"] = json!(SCHEMA);
            doc["facets"] = json!(s.to_text());
            Ok(Outcome::ok(to_json(&doc)))
        }
        other => Err(unsupported(other, "simplicial")),
    }
}

#[derive(Serialize)]
struct Table1Line {
    class: &'static str,
    n: usize,
    total: usize,
    orbits: usize,
}

#[derive(Serialize)]
struct Table2Line {
    generators: String,
    degree: u64,
    dimension: usize,
    graphical: bool,
    simplicial: bool,
    orbit_size: usize,
}

impl From<&CensusRow> for Table2Line {
    fn from(r: &CensusRow) -> Self {
        Table2Line {
            generators: r.generators_text(),
            degree: r.degree as u64,
            dimension: r.dimension,
            graphical: r.graphical,
            simplicial: r.simplicial,
            orbit_size: r.orbit_size,
        }
    }
}

fn csv_of<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn cmd_census(
    n: usize,
    class: Option<ModelClass>,
    up_to_symmetry: bool,
    emit: Emit,
    format: Format,
) -> Result<Outcome> {
    match emit {
        Emit::Table1 => {
            let classes: Vec<ModelClass> =
                class.map_or_else(|| ModelClass::ALL.to_vec(), |c| vec![c]);
            let mut lines = Vec::new();
            for c in classes {
                let count = class_census(n, c)?;
                lines.push(Table1Line {
                    class: c.name(),
                    n,
                    total: count.total,
                    orbits: count.orbits,
                });
            }
            Ok(Outcome::ok(match format {
                Format::Text => {
                    let mut out = String::new();
                    for l in &lines {
                        if class.is_none() {
                            write!(out, "{} ", l.class).unwrap();
                        }
                        if up_to_symmetry {
                            writeln!(out, "orbits={}", l.orbits).unwrap();
                        } else {
                            writeln!(out, "total={} orbits={}", l.total, l.orbits).unwrap();
                        }
                    }
                    out
                }
                Format::Csv => csv_of(&lines),
                Format::Json => to_json(&json!({ "schema": SCHEMA, "table1": lines })),
                Format::Plain => return Err(unsupported(format, "census")),
            }))
        }
        Emit::Table2 => {
            let mut rows = table2(n)?;
            if let Some(c) = class {
                rows.retain(|r| match c {
                    ModelClass::General => true,
                    ModelClass::Graphical => r.graphical,
                    ModelClass::Simplicial => r.simplicial,
                    ModelClass::Both => r.graphical && r.simplicial,
                });
            }
            let lines: Vec<Table2Line> = rows.iter().map(Table2Line::from).collect();
            Ok(Outcome::ok(match format {
                Format::Text => {
                    let mut out = String::new();
                    let width = lines
                        .iter()
                        .map(|l| l.generators.chars().count())
                        .max()
                        .unwrap_or(10)
                        .max(10);
                    writeln!(out, "{:<width$}  degree  dim  G  S  orbit", "generators").unwrap();
                    for l in &lines {
                        let pad = width - l.generators.chars().count();
                        let flag = |b: bool| if b { "x" } else { "-" };
                        writeln!(
                            out,
                            "{}{}  {:>6}  {:>3}  {}  {}  {:>5}",
                            l.generators,
                            " ".repeat(pad),
                            l.degree,
                            l.dimension,
                            flag(l.graphical),
                            flag(l.simplicial),
                            l.orbit_size
                        )
                        .unwrap();
                    }
                    out
                }
                Format::Csv => csv_of(&lines),
                Format::Json => to_json(&json!({ "schema": SCHEMA, "table2": lines })),
                Format::Plain => return Err(unsupported(format, "census")),
            }))
        }
    }
}

fn cmd_verify(args: &ModelArgs, shape: &ShapeArgs, seed: u64, draws: usize) -> Result<Outcome> {
    let gens = load_statements(args)?;
    let shape = load_shape(shape, gens.n())?;
    let ideal = closure(&gens);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let report = verify_model(&ideal, &shape, draws, &mut rng);
    let code = if report.passed() { 0 } else { 1 };
    let list = |v: &[PartialSetPartition]| {
        v.iter()
            .map(PartialSetPartition::to_text)
            .collect::<Vec<_>>()
    };
    match args.format_or(Format::Text) {
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "points checked: {}", report.points_checked).unwrap();
            writeln!(out, "nonvanishing equations: {}", report.nonvanishing.len()).unwrap();
            for e in &report.nonvanishing {
                writeln!(out, "  {e}").unwrap();
            }
            writeln!(
                out,
                "generic point is a distribution: {}",
                report.valid_distribution
            )
            .unwrap();
            writeln!(
                out,
                "witnessed non-members: {}",
                or_none(&list(&report.witnessed))
            )
            .unwrap();
            writeln!(
                out,
                "unwitnessed non-members: {}",
                or_none(&list(&report.unwitnessed))
            )
            .unwrap();
            writeln!(out, "generic draws: {}", report.draws).unwrap();
            writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" }).unwrap();
            Ok(Outcome::with_code(out, code))
        }
        Format::Json => Ok(Outcome::with_code(
            to_json(&json!({
                "schema": SCHEMA,
                "points_checked": report.points_checked,
                "nonvanishing": report.nonvanishing,
                "valid_distribution": report.valid_distribution,
                "witnessed": list(&report.witnessed),
                "unwitnessed": list(&report.unwitnessed),
                "draws": report.draws,
                "passed": report.passed(),
            })),
            code,
        )),
        other => Err(unsupported(other, "verify")),
    }
}

fn or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".to_string()
    } else {
        items.join(", ")
    }
}
