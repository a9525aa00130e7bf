//! Command-line front end: invariant computations, quotient recognition,
//! maximal-rank enumeration, catalog verification and candidate search.
//!
//! Exit codes: 0 success, 1 when the requested check reports failures
//! (strict verification discrepancies, failed diagram checks, incomplete
//! coverage), 2 on malformed input.

use crate::catalog::{self, Family, Verdict};
use crate::diagram::{
    action_kernel_order, dim_m, euler_char_m, necessary_filters, non_primitivity_witness,
    validate_diagram, Diagram,
};
use crate::enumerate::{
    cross_check_catalog, diagram_signature, enumerate_candidates, EnumConfig,
};
use crate::groups::{self, parse_group, GroupExpr};
use crate::homogeneous;
use crate::maxrank::maximal_rank_subgroups;
use crate::spheres::{classify_quotient, pi1_index_circle, transitive_pairs_on_sphere};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "c1",
    about = "Exact invariants of compact groups and cohomogeneity-one group diagrams",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Debug, Args)]
struct EnumArgs {
    /// Bound on circle-family weights (overrides C1_KMAX)
    #[arg(long)]
    kmax: Option<i64>,
    /// Bound on the number of factors of a singular group
    #[arg(long, default_value_t = 4)]
    max_factors: u32,
    /// Admit projective slice quotients (spin-level runs)
    #[arg(long)]
    spin: bool,
}

impl EnumArgs {
    fn config(&self) -> EnumConfig {
        let env_kmax = std::env::var("C1_KMAX").ok().and_then(|v| v.parse::<i64>().ok());
        EnumConfig {
            max_factors: self.max_factors,
            kmax: self.kmax.or(env_kmax).unwrap_or(8),
            include_projective: self.spin,
            ..EnumConfig::default()
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler characteristic of the homogeneous space G/K
    Euler { g: String, k: String },
    /// Rank, dimension, Weyl order, factor count and center of a group
    Invariants {
        expr: Option<String>,
        /// Read expressions from a file (one per line, # comments)
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Recognize the quotient K/H as a sphere or projective space
    Sphere { k: String, h: String },
    /// Index of the circle S1_{l,k} inside the fundamental group of U(n)
    Index { l: i64, k: i64, n: u32 },
    /// Connected maximal-rank subgroups of a classical simple group
    Maxrank {
        g: String,
        #[arg(long, default_value_t = 4)]
        max_factors: u32,
        /// Include the group itself
        #[arg(long)]
        improper: bool,
    },
    /// Validate a diagram "H < K-, K+ < G" and compute its invariants
    DiagramCheck { diagram: String },
    /// Recompute the catalog and compare with the printed values
    VerifyCatalog {
        #[arg(long)]
        family: Option<String>,
        /// Comma-separated parameter samples, e.g. --n 3,4,8
        #[arg(long)]
        n: Option<String>,
        /// Exit nonzero when discrepancies are present
        #[arg(long)]
        strict: bool,
    },
    /// Enumerate diagram candidates for a classical simple group
    Enumerate {
        g: String,
        #[command(flatten)]
        enum_args: EnumArgs,
    },
    /// Check that catalog entries appear among enumerated candidates
    CrossCheck {
        family: String,
        n: u32,
        #[command(flatten)]
        enum_args: EnumArgs,
    },
    /// The transitive sphere actions in a given dimension
    Patterns { m: u32 },
    /// The catalog as a machine-readable table
    CatalogTable,
}

fn parse_or_exit(text: &str, errors_json: bool) -> Result<GroupExpr, i32> {
    match parse_group(text) {
        Ok(g) => Ok(g),
        Err(e) => {
            if errors_json {
                println!(
                    "{}",
                    json!({"error": e.message, "offset": e.offset, "input": text})
                );
            } else {
                eprintln!("error: {e} in {text:?}");
            }
            Err(2)
        }
    }
}

/// Split a diagram expression "H < K-, K+ < G" at top-level separators.
fn split_diagram(text: &str) -> Option<(String, String, String, String)> {
    let mut depth = 0i32;
    let mut pieces: Vec<String> = vec![String::new()];
    let mut commas: Vec<usize> = vec![];
    for ch in text.chars() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '<' if depth == 0 => {
                pieces.push(String::new());
                continue;
            }
            ',' if depth == 0 => {
                commas.push(pieces.len() - 1);
                pieces.last_mut().unwrap().push('\u{0}');
                continue;
            }
            _ => {}
        }
        pieces.last_mut().unwrap().push(ch);
    }
    if pieces.len() != 3 {
        return None;
    }
    let h = pieces[0].trim().to_string();
    let middle: Vec<&str> = pieces[1].split('\u{0}').collect();
    if middle.len() != 2 {
        return None;
    }
    let g = pieces[2].trim().to_string();
    Some((h, middle[0].trim().to_string(), middle[1].trim().to_string(), g))
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn emit_rows(format: Format, headers: &[&str], rows: &[Vec<String>]) {
    match format {
        Format::Table => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for row in rows {
                for (i, cell) in row.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:width$}", c, width = widths[i]))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            println!("{}", line(headers.to_vec()));
            for row in rows {
                println!("{}", line(row.iter().map(|s| s.as_str()).collect()));
            }
        }
        Format::Csv => {
            println!("{}", headers.join(","));
            for row in rows {
                println!(
                    "{}",
                    row.iter().map(|c| csv_escape(c)).collect::<Vec<_>>().join(",")
                );
            }
        }
        Format::Json => {
            let objs: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    let mut map = serde_json::Map::new();
                    for (h, c) in headers.iter().zip(row.iter()) {
                        map.insert(h.to_string(), json!(c));
                    }
                    serde_json::Value::Object(map)
                })
                .collect();
            println!("{}", serde_json::Value::Array(objs));
        }
    }
}

fn invariant_rows(g: &GroupExpr) -> Vec<String> {
    let center = match groups::center_order(g) {
        Ok(groups::CenterOrder::Finite(m)) => m.to_string(),
        Ok(groups::CenterOrder::Infinite) => "infinite".into(),
        Err(_) => "-".into(),
    };
    vec![
        groups::format_group(g),
        groups::rank(g).to_string(),
        groups::dim(g).to_string(),
        groups::weyl_order(g).to_string(),
        groups::factor_count(g).to_string(),
        center,
    ]
}

fn run_diagram_check(d: &Diagram, format: Format) -> i32 {
    let validation = validate_diagram(d);
    let filters = necessary_filters(d);
    let chi = euler_char_m(d);
    let dim = dim_m(d);
    let kernel = action_kernel_order(d);
    let primitivity = non_primitivity_witness(d)
        .map(|w| format!("non-primitive ({w})"))
        .unwrap_or_else(|| "unknown (no witness found)".into());
    let ok = validation.all_pass() && filters.all_pass() && chi.is_ok() && dim.is_ok();
    match format {
        Format::Json => {
            println!(
                "{}",
                json!({
                    "diagram": {
                        "g": groups::format_group(&d.g),
                        "k_minus": groups::format_group(&d.k_minus),
                        "k_plus": groups::format_group(&d.k_plus),
                        "h": groups::format_group(&d.h),
                    },
                    "witness_minus": format!("{:?}", d.w_minus.quotient),
                    "witness_plus": format!("{:?}", d.w_plus.quotient),
                    "euler": chi.as_ref().map(|c| c.to_string()).unwrap_or_else(|e| format!("error: {e}")),
                    "dim": dim.as_ref().map(|d| d.to_string()).unwrap_or_else(|e| format!("error: {e}")),
                    "action_kernel": format!("{kernel:?}"),
                    "primitivity": primitivity,
                    "checks": validation.checks.iter().chain(filters.checks.iter()).map(|c| {
                        json!({"check": c.check, "verdict": c.verdict, "detail": c.detail})
                    }).collect::<Vec<_>>(),
                    "pass": ok,
                })
            );
        }
        _ => {
            println!(
                "diagram: {} < {}, {} < {}",
                groups::format_group(&d.h),
                groups::format_group(&d.k_minus),
                groups::format_group(&d.k_plus),
                groups::format_group(&d.g)
            );
            println!("slices: K-/H = {:?} (l- = {}), K+/H = {:?} (l+ = {})",
                d.w_minus.quotient, d.w_minus.l, d.w_plus.quotient, d.w_plus.l);
            match &chi {
                Ok(c) => println!("euler characteristic: {c}"),
                Err(e) => println!("euler characteristic: error: {e}"),
            }
            match &dim {
                Ok(m) => println!("dimension: {m}"),
                Err(e) => println!("dimension: error: {e}"),
            }
            println!("action kernel: {kernel:?}");
            println!("primitivity: {primitivity}");
            for c in validation.checks.iter().chain(filters.checks.iter()) {
                println!(
                    "  [{}] {} {}",
                    if c.verdict { "pass" } else { "FAIL" },
                    c.check,
                    if c.verdict { String::new() } else { format!("({})", c.detail) }
                );
            }
        }
    }
    if ok {
        0
    } else {
        1
    }
}

fn verdict_cells(v: &Verdict) -> (String, String, String) {
    match v {
        Verdict::Match { chi } => ("MATCH".into(), chi.to_string(), chi.to_string()),
        Verdict::Discrepancy { computed, printed, printed_expr } => (
            "DISCREPANCY".into(),
            computed.to_string(),
            format!("{printed} ({printed_expr})"),
        ),
        Verdict::NoPrintedValue { computed } => {
            ("NO_PRINTED_VALUE".into(), computed.to_string(), "-".into())
        }
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    let format = cli.format;
    let errors_json = format == Format::Json;
    match cli.command {
        Command::Euler { g, k } => {
            let (Ok(g), Ok(k)) = (parse_or_exit(&g, errors_json), parse_or_exit(&k, errors_json))
            else {
                return 2;
            };
            match homogeneous::euler_char(&g, &k) {
                Ok(chi) => {
                    match format {
                        Format::Json => println!("{}", json!({"euler": chi.to_string()})),
                        _ => println!("{chi}"),
                    }
                    0
                }
                Err(e) => {
                    if errors_json {
                        println!("{}", json!({"error": e.to_string()}));
                    } else {
                        eprintln!("error: {e}");
                    }
                    2
                }
            }
        }
        Command::Invariants { expr, file } => {
            let mut inputs: Vec<String> = vec![];
            if let Some(e) = expr {
                inputs.push(e);
            }
            if let Some(path) = file {
                match std::fs::read_to_string(&path) {
                    Ok(text) => {
                        for line in text.lines() {
                            let line = line.split('#').next().unwrap_or("").trim();
                            if !line.is_empty() {
                                inputs.push(line.to_string());
                            }
                        }
                    }
                    Err(e) => {
                        eprintln!("error: cannot read {}: {e}", path.display());
                        return 2;
                    }
                }
            }
            if inputs.is_empty() {
                eprintln!("error: no expression given");
                return 2;
            }
            let mut rows = vec![];
            for text in &inputs {
                let Ok(g) = parse_or_exit(text, errors_json) else { return 2 };
                rows.push(invariant_rows(&g));
            }
            emit_rows(format, &["group", "rank", "dim", "weyl", "factors", "center"], &rows);
            0
        }
        Command::Sphere { k, h } => {
            let (Ok(k), Ok(h)) = (parse_or_exit(&k, errors_json), parse_or_exit(&h, errors_json))
            else {
                return 2;
            };
            match classify_quotient(&k, &h) {
                Ok(q) => {
                    match format {
                        Format::Json => println!("{}", json!({"quotient": format!("{q:?}")})),
                        _ => println!("{q:?}"),
                    }
                    0
                }
                Err(e) => {
                    if errors_json {
                        println!("{}", json!({"error": e.to_string()}));
                    } else {
                        eprintln!("error: {e}");
                    }
                    2
                }
            }
        }
        Command::Index { l, k, n } => {
            if n < 2 {
                eprintln!("error: n must be at least 2");
                return 2;
            }
            match pi1_index_circle(l, k, n) {
                Ok(ix) => {
                    let reading = match ix {
                        1 => "sphere",
                        2 => "projective",
                        _ => "lens",
                    };
                    match format {
                        Format::Json => {
                            println!("{}", json!({"index": ix, "quotient": reading}))
                        }
                        _ => println!("{ix}"),
                    }
                    0
                }
                Err(e) => {
                    if errors_json {
                        println!("{}", json!({"error": e.to_string()}));
                    } else {
                        eprintln!("error: {e}");
                    }
                    2
                }
            }
        }
        Command::Maxrank { g, max_factors, improper } => {
            let Ok(g) = parse_or_exit(&g, errors_json) else { return 2 };
            match maximal_rank_subgroups(&g, max_factors, !improper) {
                Ok(list) => {
                    match format {
                        Format::Json => {
                            let items: Vec<String> =
                                list.iter().map(groups::format_group).collect();
                            println!("{}", json!(items));
                        }
                        _ => {
                            for k in &list {
                                println!("{}", groups::format_group(k));
                            }
                        }
                    }
                    0
                }
                Err(e) => {
                    if errors_json {
                        println!("{}", json!({"error": e.to_string()}));
                    } else {
                        eprintln!("error: {e}");
                    }
                    2
                }
            }
        }
        Command::DiagramCheck { diagram } => {
            let Some((h, km, kp, g)) = split_diagram(&diagram) else {
                if errors_json {
                    println!(
                        "{}",
                        json!({"error": "expected H < K-, K+ < G", "offset": 0})
                    );
                } else {
                    eprintln!("error: expected a diagram of the form \"H < K-, K+ < G\"");
                }
                return 2;
            };
            let (Ok(h), Ok(km), Ok(kp), Ok(g)) = (
                parse_or_exit(&h, errors_json),
                parse_or_exit(&km, errors_json),
                parse_or_exit(&kp, errors_json),
                parse_or_exit(&g, errors_json),
            ) else {
                return 2;
            };
            // subgroups inherit the ambient group when unstated
            let ambient = g.ambient.or_else(|| {
                g.factors.first().and_then(|f| match &f.kind {
                    groups::FactorKind::SpecialUnitary(n) => {
                        Some(groups::Ambient::new(groups::ClassicalFamily::SU, *n))
                    }
                    groups::FactorKind::SpecialOrthogonal(n) => {
                        Some(groups::Ambient::new(groups::ClassicalFamily::SO, *n))
                    }
                    groups::FactorKind::SpinCover(n) => {
                        Some(groups::Ambient::new(groups::ClassicalFamily::Spin, *n))
                    }
                    groups::FactorKind::Symplectic(n) => {
                        Some(groups::Ambient::new(groups::ClassicalFamily::Sp, *n))
                    }
                    _ => None,
                })
            });
            let with_ambient = |mut x: GroupExpr| {
                if x.ambient.is_none() {
                    x.ambient = ambient;
                }
                x
            };
            let d = Diagram::assemble(g, with_ambient(km), with_ambient(kp), with_ambient(h));
            run_diagram_check(&d, format)
        }
        Command::VerifyCatalog { family, n, strict } => {
            let family = match family {
                Some(f) => match Family::parse(&f) {
                    Some(f) => Some(f),
                    None => {
                        eprintln!("error: unknown family {f:?}");
                        return 2;
                    }
                },
                None => None,
            };
            let samples: Option<Vec<u32>> = match n {
                Some(list) => {
                    let parsed: Result<Vec<u32>, _> =
                        list.split(',').map(|p| p.trim().parse::<u32>()).collect();
                    match parsed {
                        Ok(v) => Some(v),
                        Err(_) => {
                            eprintln!("error: malformed sample list {list:?}");
                            return 2;
                        }
                    }
                }
                None => None,
            };
            let summary = catalog::verify_all(family, samples.as_deref());
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string(&summary).unwrap());
                }
                _ => {
                    let rows: Vec<Vec<String>> = summary
                        .reports
                        .iter()
                        .map(|r| {
                            let (verdict, computed, printed) = verdict_cells(&r.verdict);
                            vec![
                                r.entry.clone(),
                                r.family.to_string(),
                                r.n.to_string(),
                                verdict,
                                computed,
                                printed,
                                if r.validate_pass && r.filters_pass && r.spin_checks_pass {
                                    "ok".into()
                                } else {
                                    "FAIL".into()
                                },
                            ]
                        })
                        .collect();
                    emit_rows(
                        format,
                        &["entry", "family", "n", "verdict", "computed", "printed", "checks"],
                        &rows,
                    );
                    println!(
                        "summary: {} match, {} discrepancy, {} unprinted",
                        summary.matches, summary.discrepancies, summary.unprinted
                    );
                }
            }
            let checks_fail = summary
                .reports
                .iter()
                .any(|r| !(r.validate_pass && r.filters_pass && r.spin_checks_pass));
            if checks_fail || (strict && summary.discrepancies > 0) {
                1
            } else {
                0
            }
        }
        Command::Enumerate { g, enum_args } => {
            let Ok(g) = parse_or_exit(&g, errors_json) else { return 2 };
            let cfg = enum_args.config();
            let list = enumerate_candidates(&g, &cfg);
            match format {
                Format::Json => {
                    for d in &list {
                        println!(
                            "{}",
                            json!({
                                "h": groups::format_group(&d.h),
                                "k_minus": groups::format_group(&d.k_minus),
                                "k_plus": groups::format_group(&d.k_plus),
                                "g": groups::format_group(&d.g),
                                "euler": euler_char_m(d).map(|c| c.to_string()).unwrap_or_default(),
                                "signature": diagram_signature(d),
                            })
                        );
                    }
                }
                _ => {
                    let rows: Vec<Vec<String>> = list
                        .iter()
                        .map(|d| {
                            vec![
                                groups::format_group(&d.h),
                                groups::format_group(&d.k_minus),
                                groups::format_group(&d.k_plus),
                                euler_char_m(d).map(|c| c.to_string()).unwrap_or_default(),
                                dim_m(d).map(|c| c.to_string()).unwrap_or_default(),
                            ]
                        })
                        .collect();
                    emit_rows(format, &["H", "K-", "K+", "euler", "dim"], &rows);
                    println!("{} candidates", list.len());
                }
            }
            0
        }
        Command::CrossCheck { family, n, enum_args } => {
            let Some(family) = Family::parse(&family) else {
                eprintln!("error: unknown family {family:?}");
                return 2;
            };
            let cfg = enum_args.config();
            let report = cross_check_catalog(family, n, &cfg);
            match format {
                Format::Json => println!("{}", serde_json::to_string(&report).unwrap()),
                _ => {
                    for id in &report.found {
                        println!("found    {id}");
                    }
                    for id in &report.missing {
                        println!("MISSING  {id}");
                    }
                    println!(
                        "{}/{} catalog entries found among {} candidates",
                        report.found.len(),
                        report.found.len() + report.missing.len(),
                        report.candidates
                    );
                }
            }
            if report.complete() {
                0
            } else {
                1
            }
        }
        Command::Patterns { m } => {
            if m == 0 {
                eprintln!("error: spheres start at dimension 1");
                return 2;
            }
            let rows: Vec<Vec<String>> = transitive_pairs_on_sphere(m)
                .iter()
                .map(|p| {
                    let fmt_kinds = |ks: &[groups::FactorKind]| {
                        if ks.is_empty() {
                            "1".to_string()
                        } else {
                            ks.iter()
                                .map(|k| {
                                    groups::format_group(&GroupExpr::single(k.clone()))
                                })
                                .collect::<Vec<_>>()
                                .join("x")
                        }
                    };
                    vec![
                        fmt_kinds(&p.acting),
                        fmt_kinds(&p.isotropy),
                        p.sphere_dim.to_string(),
                        p.isotropy_kernel_factors.to_string(),
                        p.label.to_string(),
                    ]
                })
                .collect();
            emit_rows(format, &["acting", "isotropy", "sphere_dim", "kernel_factors", "representation"], &rows);
            0
        }
        Command::CatalogTable => {
            let rows: Vec<Vec<String>> = catalog::catalog()
                .iter()
                .map(|e| {
                    vec![
                        e.id.to_string(),
                        e.family.token().to_string(),
                        format!(
                            "{}..{}",
                            e.min_n,
                            e.max_n.map(|m| m.to_string()).unwrap_or_default()
                        ),
                        e.template.to_string(),
                        e.printed_chi
                            .as_ref()
                            .map(|c| c.display.to_string())
                            .unwrap_or_else(|| "-".into()),
                        e.source.to_string(),
                        e.spin_level.to_string(),
                    ]
                })
                .collect();
            emit_rows(
                format,
                &["id", "family", "range", "diagram", "chi", "source", "spin_level"],
                &rows,
            );
            0
        }
    }
}
