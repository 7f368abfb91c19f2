//! Command-line front end.
//!
//! Exit codes: 0 when every selected check passes, 1 on a verification
//! failure, 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cohomring::{render_t_action, Basis, CohClass, CohomologyModel, PRINTED_T_FROM_OMEGA};
use crate::linalg::Matrix;
use crate::obstruct::{
    theorem_pipeline, CheckId, CheckRecord, CheckStatus, PipelineOptions, TheoremStatus,
    VerificationReport, MULTIPLICITY,
};
use crate::pontsolve::{
    solve_constraints, sum_classes, xi_classes, ConstraintToggles, PRINTED_XI_P1, TABLE_NAMES,
};
use crate::rootsys::{
    build_d4, verify_word_table, RootSystem, RootVector, SignedPerm, Word, SIMPLE_INDICES,
};
use crate::vect4::DEFAULT_WINDOW;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Version of the JSON report layout.
pub const JSON_SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    /// Root words `αi = w(α1)`.
    #[value(name = "2-4")]
    Words,
    /// Transition between the `t` and `ω` bases.
    #[value(name = "3-1")]
    BasisChange,
    /// Action of the simple reflections on `t1..t4`.
    #[value(name = "t-actions")]
    TActions,
    /// `p1(E_αi)` at `k1 = k2 = k`.
    #[value(name = "4-2")]
    Orbit,
    /// `p1(E_α7..12)` after `k3 = -k`, and their sum.
    #[value(name = "4-3")]
    Focal,
    /// Euler and Pontryagin class of `ξ = E_α1`.
    #[value(name = "4-4")]
    Xi,
}

#[derive(Debug, Parser)]
#[command(
    name = "isoparam",
    version,
    about = "Exact verification of the D4 multiplicity-4 isoparametric obstruction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Half-width N of the exhaustive bundle window checks.
    #[arg(long, default_value_t = DEFAULT_WINDOW, value_parser = clap::value_parser!(i64).range(4..), global = true)]
    pub window: i64,

    /// Drop the symmetry constraint (diagnostic).
    #[arg(long, global = true)]
    pub disable_symmetry: bool,

    /// Drop the leaf-sphere constraint (diagnostic).
    #[arg(long, global = true)]
    pub disable_leaf_sphere: bool,

    /// Drop the sum-zero constraint (diagnostic).
    #[arg(long, global = true)]
    pub disable_sum_zero: bool,

    #[arg(long, global = true)]
    pub skip_window_checks: bool,

    /// Also write the output to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every check; exit 0 iff the obstruction is certified.
    VerifyAll,
    /// Run one check by id.
    Verify {
        #[arg(value_name = "CHECK_ID")]
        check: CheckId,
    },
    /// List the positive roots and the Cartan matrix.
    Roots,
    /// Weyl group queries.
    Weyl {
        /// Print |W|.
        #[arg(long)]
        order: bool,
        /// A word in s1, s2, s3, s9, e.g. "s2 s1 s3 s2".
        #[arg(long)]
        word: Option<Word>,
        /// Apply the word to a vector such as "(1,-1,0,0)".
        #[arg(long, requires = "word", allow_hyphen_values = true)]
        apply: Option<RootVector>,
    },
    /// Print one of the computed tables (all of them by default).
    Tables {
        #[arg(long, value_enum)]
        which: Option<Table>,
    },
    /// Render the full report; exits 0 whatever the verdict.
    Report,
}

impl Cli {
    pub fn pipeline_options(&self) -> PipelineOptions {
        PipelineOptions {
            toggles: ConstraintToggles {
                leaf_sphere: !self.disable_leaf_sphere,
                sum_zero: !self.disable_sum_zero,
                symmetry: !self.disable_symmetry,
            },
            skip_window_checks: self.skip_window_checks,
            window: self.window,
        }
    }
}

/// Parses `args` (including the program name), runs the command, and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let (text, code) = match execute(&cli) {
        Ok(r) => r,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            let _ = writeln!(err, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_FAILURE;
    }
    code
}

fn execute(cli: &Cli) -> Result<(String, i32), String> {
    let rs = build_d4(MULTIPLICITY).map_err(|e| e.to_string())?;
    match &cli.command {
        Command::VerifyAll => {
            let report = theorem_pipeline(&cli.pipeline_options());
            let code = if report.is_obstructed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Ok((render_report(&report, cli.format), code))
        }
        Command::Verify { check } => {
            let report = theorem_pipeline(&cli.pipeline_options()).only(*check);
            let passed = report.checks.iter().all(|c| c.status == CheckStatus::Pass);
            Ok((
                render_report(&report, cli.format),
                if passed { EXIT_OK } else { EXIT_FAILURE },
            ))
        }
        Command::Report => Ok((
            render_report(&theorem_pipeline(&cli.pipeline_options()), cli.format),
            EXIT_OK,
        )),
        Command::Roots => Ok((render_roots(&rs, cli.format), EXIT_OK)),
        Command::Weyl { order, word, apply } => {
            render_weyl(&rs, *order, word.as_ref(), apply.as_ref(), cli.format)
                .map(|s| (s, EXIT_OK))
        }
        Command::Tables { which } => {
            let tables = match which {
                Some(t) => vec![*t],
                None => Table::value_variants().to_vec(),
            };
            render_tables(&rs, &tables, cli.format).map(|s| (s, EXIT_OK))
        }
    }
}

// ---------------------------------------------------------------------------
// Report rendering

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: u32,
    status: Option<TheoremStatus>,
    failing_check: Option<&'a str>,
    checks: &'a [CheckRecord],
    errata: &'a [CheckRecord],
    axioms: &'a [CheckRecord],
    theorem: Option<JsonTheorem>,
}

#[derive(Serialize)]
struct JsonTheorem {
    restrictions: Vec<JsonRestriction>,
    intersection: String,
}

#[derive(Serialize)]
struct JsonRestriction {
    bundle: &'static str,
    leaf: String,
    f: String,
    congruence: String,
    residues: String,
}

/// Deterministic rendering of a report.
pub fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Text => render_text(report),
        Format::Json => {
            let view = JsonReport {
                schema: JSON_SCHEMA,
                status: report.status,
                failing_check: report.failing_check,
                checks: &report.checks,
                errata: &report.errata,
                axioms: &report.axioms,
                theorem: report.theorem.as_ref().map(|t| JsonTheorem {
                    restrictions: t
                        .restrictions
                        .iter()
                        .map(|r| JsonRestriction {
                            bundle: r.name,
                            leaf: format!("b{}", r.leaf),
                            f: r.f_pair(),
                            congruence: r.congruence.to_string(),
                            residues: r.residues.to_string(),
                        })
                        .collect(),
                    intersection: t.intersection.to_string(),
                }),
            };
            let mut s = serde_json::to_string_pretty(&view).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn render_record(out: &mut String, r: &CheckRecord) {
    if r.reference.starts_with('(') {
        out.push_str(&format!("[{}] {} {}\n", r.status, r.id, r.reference));
    } else {
        out.push_str(&format!("[{}] {} ({})\n", r.status, r.id, r.reference));
    }
    out.push_str(&format!("    {}\n", r.statement));
    if !r.detail.is_empty() {
        out.push_str(&format!("    {}\n", r.detail));
    }
}

fn render_text(report: &VerificationReport) -> String {
    let mut out = String::from("isoparam verification report\n");
    if let Some(status) = report.status {
        out.push_str(&format!("status: {status}\n"));
    }
    if let Some(id) = report.failing_check {
        out.push_str(&format!("failing check: {id}\n"));
    }
    let n = report.checks.len();
    let mut counts = String::new();
    for status in [
        CheckStatus::Pass,
        CheckStatus::Fail,
        CheckStatus::Skipped,
        CheckStatus::Inconclusive,
    ] {
        let c = report.checks.iter().filter(|r| r.status == status).count();
        if c > 0 {
            counts.push_str(if counts.is_empty() { ": " } else { ", " });
            counts.push_str(&format!("{c} {status}"));
        }
    }
    out.push_str(&format!(
        "{n} check{}{counts}\n",
        if n == 1 { "" } else { "s" }
    ));

    for r in &report.checks {
        out.push('\n');
        render_record(&mut out, r);
    }
    for (title, records) in [("errata", &report.errata), ("axioms", &report.axioms)] {
        if records.is_empty() {
            continue;
        }
        out.push_str(&format!("\n{title}\n"));
        for r in records {
            render_record(&mut out, r);
        }
    }
    if let Some(t) = &report.theorem {
        out.push_str("\ntheorem\n");
        for r in &t.restrictions {
            out.push_str(&format!(
                "    f({}) = {}: {} ⇒ {}\n",
                r.name,
                r.f_pair(),
                r.congruence,
                r.residues
            ));
        }
        out.push_str(&format!("    intersection: {}\n", t.intersection));
    }
    out
}

// ---------------------------------------------------------------------------
// Other commands

fn json_line(value: serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
    s.push('\n');
    s
}

fn render_roots(rs: &RootSystem, format: Format) -> String {
    let roots = rs.positive_roots();
    let cartan = rs.simple_cartan_matrix();
    match format {
        Format::Json => json_line(serde_json::json!({
            "roots": roots.iter().enumerate().map(|(i, r)| serde_json::json!({
                "index": i + 1,
                "vector": r.to_string(),
                "simple": SIMPLE_INDICES.contains(&(i + 1)),
            })).collect::<Vec<_>>(),
            "cartan": cartan,
        })),
        Format::Text => {
            let mut out = String::new();
            for (i, r) in roots.iter().enumerate() {
                let mark = if SIMPLE_INDICES.contains(&(i + 1)) {
                    "  simple"
                } else {
                    ""
                };
                out.push_str(&format!("α{:<2} = {r}{mark}\n", i + 1));
            }
            out.push_str("cartan matrix (α1, α2, α3, α9)\n");
            for row in cartan {
                out.push_str(&row.iter().map(|x| format!("{x:>3}")).collect::<String>());
                out.push('\n');
            }
            out
        }
    }
}

fn render_weyl(
    rs: &RootSystem,
    order: bool,
    word: Option<&Word>,
    apply: Option<&RootVector>,
    format: Format,
) -> Result<String, String> {
    let w = rs.weyl_group();
    if order {
        return Ok(match format {
            Format::Json => json_line(serde_json::json!({ "order": w.order() })),
            Format::Text => format!("{}\n", w.order()),
        });
    }
    if let Some(word) = word {
        if let Some(bad) = word
            .letters()
            .iter()
            .find(|l| !SIMPLE_INDICES.contains(&(**l as usize)))
        {
            return Err(format!(
                "s{bad} is not a simple reflection (use s1, s2, s3, s9)"
            ));
        }
        let perm = rs.word_element(word).map_err(|e| e.to_string())?;
        let shortest = w.get(&perm).map(|e| e.word.to_string()).unwrap_or_default();
        let image = apply.map(|v| perm.apply(v));
        return Ok(match format {
            Format::Json => json_line(serde_json::json!({
                "word": word.to_string(),
                "element": perm.to_string(),
                "shortest_word": shortest,
                "image": image.map(|v| v.to_string()),
            })),
            Format::Text => {
                let mut s = format!("word: {word}\nelement: {perm}\nshortest word: {shortest}\n");
                if let (Some(v), Some(img)) = (apply, image) {
                    s.push_str(&format!("{v} ↦ {img}\n"));
                }
                s
            }
        });
    }
    let gens: Vec<(usize, SignedPerm)> = SIMPLE_INDICES
        .iter()
        .zip(rs.generators())
        .map(|(i, g)| (*i, g.perm))
        .collect();
    let wb = rs.stabilizer_group().order();
    Ok(match format {
        Format::Json => json_line(serde_json::json!({
            "order": w.order(),
            "stabilizer_order": wb,
            "generators": gens.iter().map(|(i, p)| (format!("s{i}"), p.to_string())).collect::<std::collections::BTreeMap<_, _>>(),
        })),
        Format::Text => {
            let mut s = format!("order: {}\nstabilizer order: {wb}\n", w.order());
            for (i, p) in gens {
                s.push_str(&format!("s{i} = {p}\n"));
            }
            s
        }
    })
}

fn basis_rows(m: &Matrix, row_basis: &dyn Fn(usize) -> String, col_basis: Basis) -> Vec<String> {
    (0..4)
        .map(|i| {
            format!(
                "{} = {}",
                row_basis(i),
                CohClass::new(col_basis, std::array::from_fn(|j| m[(i, j)]))
            )
        })
        .collect()
}

fn table_rows(rs: &RootSystem, table: Table) -> Result<Vec<String>, String> {
    let model = CohomologyModel::new(rs);
    let solve =
        || solve_constraints(&model, ConstraintToggles::default()).map_err(|e| e.to_string());
    Ok(match table {
        Table::Words => verify_word_table(rs)
            .iter()
            .map(|c| {
                format!(
                    "α{} = {} (α1) = {}{}",
                    c.root,
                    c.word,
                    c.computed,
                    if c.passed() { "" } else { "  MISMATCH" }
                )
            })
            .collect(),
        Table::BasisChange => {
            let mut rows = basis_rows(model.t_in_omega(), &|i| format!("t{}", i + 1), Basis::Omega);
            rows.extend(basis_rows(
                model.omega_in_t(),
                &|i| format!("ω{}", SIMPLE_INDICES[i]),
                Basis::T,
            ));
            let printed = Matrix::from_int_rows(&PRINTED_T_FROM_OMEGA);
            let last = CohClass::new(Basis::Omega, std::array::from_fn(|j| printed[(3, j)]));
            rows.push(format!("printed: t4 = {last} (not used)"));
            rows
        }
        Table::TActions => SIMPLE_INDICES
            .iter()
            .map(|&i| {
                model
                    .action_on_t(i)
                    .map(|p| render_t_action(i, &p))
                    .map_err(|e| e.to_string())
            })
            .collect::<Result<_, _>>()?,
        Table::Orbit => solve()?
            .classes_k2_eq_k1()
            .iter()
            .enumerate()
            .map(|(i, c)| format!("p1(E_α{}) = {}", i + 1, c.render(&TABLE_NAMES)))
            .collect(),
        Table::Focal => {
            let classes = solve()?.classes_k3_eq_minus_k();
            let mut rows: Vec<String> = classes[6..]
                .iter()
                .enumerate()
                .map(|(i, c)| format!("p1(E_α{}) = {}", i + 7, c.render(&TABLE_NAMES)))
                .collect();
            rows.push(format!(
                "sum = {}",
                sum_classes(&classes[6..]).render(&TABLE_NAMES)
            ));
            rows
        }
        Table::Xi => {
            let s = solve()?;
            let xi = xi_classes(&model, &s.solution).map_err(|e| e.to_string())?;
            vec![
                format!("e(ξ) = {}", xi.euler),
                format!("p1(ξ) = {}", xi.render_p1()),
                format!("printed: p1(ξ) = {PRINTED_XI_P1}"),
            ]
        }
    })
}

fn table_name(t: Table) -> String {
    t.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn render_tables(rs: &RootSystem, tables: &[Table], format: Format) -> Result<String, String> {
    let mut rendered = Vec::new();
    for &t in tables {
        rendered.push((table_name(t), table_rows(rs, t)?));
    }
    Ok(match format {
        Format::Json => json_line(serde_json::json!({
            "tables": rendered.iter().map(|(name, rows)| serde_json::json!({ "table": name, "rows": rows })).collect::<Vec<_>>(),
        })),
        Format::Text => rendered
            .iter()
            .map(|(name, rows)| format!("[{name}]\n{}\n", rows.join("\n")))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}
