//! Command-line front end: tables, the Fano numbers, named series, the
//! two-variable coefficient grid, and the self-test suites.
//!
//! Exit-code contract: 0 on success, 1 when a verified mathematical
//! invariant fails (cross-method disagreement, a failed self-test, an odd
//! adjunction integral), 2 on usage errors (malformed flags, unknown series
//! names; clap produces these itself).
//!
//! All JSON output is exact: numeric values are decimal integer strings or
//! `p/q` fraction strings, never floating point. Identical invocations
//! produce byte-identical output.

use std::env;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::chow::fano::FanoTower;
use crate::chow::{
    lr_cache, o_one, tangent_bundle, tautological_quotient, tautological_sub, BundleClass,
    ChowClass, Partition, Space,
};
use crate::counts::{self, Method};
use crate::modforms::{self, SeriesName};
use crate::qseries::{Rational, YLaurent};

#[derive(Debug, Parser)]
#[command(
    name = "hkcount",
    about = "Exact counts of elliptic curves of minimal degree in K3 surfaces and \
             hyper-Kähler fourfolds of K3^[2] type",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// K3 counts: one row per h, with (β,β) = 2h - 2.
    K3 {
        /// Largest h to tabulate.
        #[arg(long)]
        hmax: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Counts for `K3^[2]`-type fourfolds: one row per s ≡ 0, 3 (mod 4), with (β,β) = s/2.
    K3two {
        /// Largest s to tabulate.
        #[arg(long)]
        smax: u32,
        /// Evaluation route; `both` cross-checks the two.
        #[arg(long, value_enum, default_value_t = MethodArg::Jacobi)]
        method: MethodArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// The curve of cubic cones in the Fano variety of lines.
    Fano {
        /// Which invariant to compute.
        #[arg(value_enum)]
        which: FanoTarget,
        /// Compute the singular-cubics divisor by the Euler-class
        /// pushforward as well, and require both routes to agree.
        #[arg(long)]
        via_euler: bool,
    },
    /// q-expansion of a named one-variable series.
    Series {
        /// One of: delta, invdelta, e2, e4, theta4, f, g2, g4.
        name: String,
        /// Exclusive truncation order in q.
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        order: i64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Two-variable coefficient grid of the `K3^[2]` counting series.
    Jacobi {
        /// Exclusive truncation order in q.
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        qorder: i64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Verify the pinned identities and enumerative oracles.
    Selftest {
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug, Args)]
pub struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Jacobi,
    Gamma0,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Jacobi => Method::Jacobi,
            MethodArg::Gamma0 => Method::Gamma0,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FanoTarget {
    Genus,
    Degree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

/// A failure that should terminate the process with a nonzero exit code.
#[derive(Debug)]
pub enum CliError {
    /// A mathematical invariant failed: exit code 1.
    Invariant(String),
    /// Bad arguments not caught by the parser: exit code 2.
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invariant(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invariant(m) => write!(f, "invariant failure: {m}"),
            CliError::Usage(m) => write!(f, "usage error: {m}"),
        }
    }
}

/// Runs a parsed command, printing its output to stdout.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let cache_path = lr_cache_path();
    if let Some(path) = &cache_path {
        load_lr_cache(path);
    }
    let result = dispatch(cli);
    if let Some(path) = &cache_path {
        if let Err(e) = lr_cache::save_to(path) {
            eprintln!("warning: could not write LR cache {}: {e}", path.display());
        }
    }
    result
}

fn lr_cache_path() -> Option<PathBuf> {
    match env::var("HKCOUNT_LR_CACHE") {
        Ok(path) if !path.is_empty() => Some(PathBuf::from(path)),
        _ => None,
    }
}

fn load_lr_cache(path: &Path) {
    if !path.exists() {
        return;
    }
    if let Err(e) = lr_cache::load_from(path) {
        // a bad cache only costs speed, never correctness
        eprintln!("warning: ignoring LR cache {}: {e}", path.display());
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::K3 { hmax, format } => run_k3(hmax, format.format),
        Command::K3two {
            smax,
            method,
            format,
        } => run_k3two(smax as i64, method, format.format),
        Command::Fano { which, via_euler } => run_fano(which, via_euler),
        Command::Series {
            name,
            order,
            format,
        } => run_series(&name, order, format.format),
        Command::Jacobi { qorder, format } => run_jacobi(qorder, format.format),
        Command::Selftest { level } => run_selftest(level),
    }
}

struct Row {
    index: Map<String, Value>,
    cells: Vec<String>,
    value: String,
}

struct Doc {
    command: &'static str,
    params: Map<String, Value>,
    columns: Vec<&'static str>,
    rows: Vec<Row>,
}

fn render(doc: Doc, format: Format) {
    match format {
        Format::Table => {
            let mut widths: Vec<usize> = doc.columns.iter().map(|c| c.len()).collect();
            for row in &doc.rows {
                for (i, cell) in row.cells.iter().enumerate() {
                    widths[i] = widths[i].max(cell.len());
                }
            }
            let header: Vec<String> = doc
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:>width$}", c, width = widths[i]))
                .collect();
            println!("{}", header.join("  "));
            for row in &doc.rows {
                let line: Vec<String> = row
                    .cells
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{:>width$}", c, width = widths[i]))
                    .collect();
                println!("{}", line.join("  "));
            }
        }
        Format::Csv => {
            println!("{}", doc.columns.join(","));
            for row in &doc.rows {
                println!("{}", row.cells.join(","));
            }
        }
        Format::Json => {
            let results: Vec<Value> = doc
                .rows
                .into_iter()
                .map(|row| json!({ "index": row.index, "value": row.value }))
                .collect();
            let out = json!({
                "command": doc.command,
                "params": doc.params,
                "results": results,
            });
            println!("{out}");
        }
    }
}

fn invariant(e: impl std::fmt::Display) -> CliError {
    CliError::Invariant(e.to_string())
}

fn run_k3(hmax: u32, format: Format) -> Result<(), CliError> {
    let rows = counts::table1(hmax).map_err(invariant)?;
    let mut params = Map::new();
    params.insert("hmax".into(), json!(hmax));
    let doc = Doc {
        command: "k3",
        params,
        columns: vec!["h", "bb", "count"],
        rows: rows
            .into_iter()
            .map(|row| {
                let mut index = Map::new();
                index.insert("h".into(), json!(row.h));
                index.insert("bb".into(), json!(row.bb_square));
                Row {
                    index,
                    cells: vec![
                        row.h.to_string(),
                        row.bb_square.to_string(),
                        row.count.to_string(),
                    ],
                    value: row.count.to_string(),
                }
            })
            .collect(),
    };
    render(doc, format);
    Ok(())
}

fn bb_fraction(s: i64) -> String {
    Rational::new(s, 2).to_string()
}

fn run_k3two(smax: i64, method: MethodArg, format: Format) -> Result<(), CliError> {
    let rows = counts::table2(smax, method.into()).map_err(invariant)?;
    let mut params = Map::new();
    params.insert("smax".into(), json!(smax));
    params.insert(
        "method".into(),
        json!(match method {
            MethodArg::Jacobi => "jacobi",
            MethodArg::Gamma0 => "gamma0",
            MethodArg::Both => "both",
        }),
    );
    let doc = Doc {
        command: "k3two",
        params,
        columns: vec!["s", "bb", "count"],
        rows: rows
            .into_iter()
            .map(|row| {
                let mut index = Map::new();
                index.insert("s".into(), json!(row.s));
                index.insert("bb".into(), json!(bb_fraction(row.s)));
                Row {
                    index,
                    cells: vec![row.s.to_string(), bb_fraction(row.s), row.count.to_string()],
                    value: row.count.to_string(),
                }
            })
            .collect(),
    };
    render(doc, format);
    Ok(())
}

fn run_fano(which: FanoTarget, via_euler: bool) -> Result<(), CliError> {
    let tower = FanoTower::build().map_err(invariant)?;
    match which {
        FanoTarget::Genus => {
            let (_, genus) = tower.genus().map_err(invariant)?;
            println!("{genus}");
        }
        FanoTarget::Degree => {
            let divisor = tower.discriminant_divisor();
            if via_euler {
                let euler = tower.discriminant_divisor_via_euler();
                if euler != divisor {
                    return Err(CliError::Invariant(
                        "closed-form and Euler-class discriminant divisors disagree".into(),
                    ));
                }
            }
            let degree = tower.j_line_degree(&divisor);
            println!("{degree}");
        }
    }
    Ok(())
}

fn run_series(name: &str, order: i64, format: Format) -> Result<(), CliError> {
    let parsed = SeriesName::parse(name)
        .ok_or_else(|| CliError::Usage(format!("unknown series name {name:?}")))?;
    let series = parsed
        .scalar_series(order)
        .ok_or_else(|| {
            CliError::Usage(format!(
                "series {name:?} is two-variable; use the `jacobi` command"
            ))
        })?
        .map_err(invariant)?;
    let mut params = Map::new();
    params.insert("name".into(), json!(name));
    params.insert("order".into(), json!(order));
    let rows = (series.valuation().min(0)..series.order())
        .map(|n| {
            let c = series.coefficient(n).expect("below order");
            let mut index = Map::new();
            index.insert("n".into(), json!(n));
            Row {
                index,
                cells: vec![n.to_string(), c.to_string()],
                value: c.to_string(),
            }
        })
        .collect();
    render(
        Doc {
            command: "series",
            params,
            columns: vec!["n", "coefficient"],
            rows,
        },
        format,
    );
    Ok(())
}

fn run_jacobi(qorder: i64, format: Format) -> Result<(), CliError> {
    let series = counts::n_k3two_jacobi(qorder);
    let mut params = Map::new();
    params.insert("qorder".into(), json!(qorder));
    match format {
        Format::Table => {
            for n in 0..series.order() {
                let c = series.coefficient(n).expect("below order");
                println!("q^{n}: {c}");
            }
        }
        _ => {
            let mut rows = Vec::new();
            for n in 0..series.order() {
                let c = series.coefficient(n).expect("below order");
                for (k, coeff) in c.terms() {
                    let mut index = Map::new();
                    index.insert("n".into(), json!(n));
                    index.insert("k".into(), json!(k));
                    rows.push(Row {
                        index,
                        cells: vec![n.to_string(), k.to_string(), coeff.to_string()],
                        value: coeff.to_string(),
                    });
                }
            }
            render(
                Doc {
                    command: "jacobi",
                    params,
                    columns: vec!["n", "k", "value"],
                    rows,
                },
                format,
            );
        }
    }
    Ok(())
}

struct Check {
    name: &'static str,
    run: Box<dyn Fn() -> Result<String, String>>,
}

fn check(name: &'static str, run: impl Fn() -> Result<String, String> + 'static) -> Check {
    Check {
        name,
        run: Box::new(run),
    }
}

fn expect<T: PartialEq + std::fmt::Display>(
    label: &str,
    got: T,
    want: T,
) -> Result<String, String> {
    if got == want {
        Ok(got.to_string())
    } else {
        Err(format!("{label}: expected {want}, got {got}"))
    }
}

fn quick_checks() -> Vec<Check> {
    vec![
        check("k3-table-h7", || {
            let rows = counts::table1(7).map_err(|e| e.to_string())?;
            expect(
                "n_K3 at h=7",
                rows[7].count.clone(),
                Rational::from(41513472i64),
            )
        }),
        check("k3-bridge-identity", || {
            // k3_series asserts n = (N - C)/2 internally
            let series = counts::k3_series(12);
            expect(
                "n_K3 at h=1",
                series.counts.coefficient(0).map_err(|e| e.to_string())?,
                Rational::from(24i64),
            )
        }),
        check("ramanujan-delta", || {
            let n = 20;
            let d = modforms::delta(n);
            let e2 = modforms::eisenstein(2, n).expect("weight 2");
            let rhs = &e2 * &d;
            if d.q_derivative().agrees_up_to(&rhs, rhs.order()) {
                Ok("q dΔ/dq = E2·Δ".into())
            } else {
                Err("q dΔ/dq != E2·Δ".into())
            }
        }),
        check("ramanujan-e2", || {
            let n = 20;
            let e2 = modforms::eisenstein(2, n).expect("weight 2");
            let e4 = modforms::eisenstein(4, n).expect("weight 4");
            let lhs = e2.q_derivative().scale(&Rational::from(12i64));
            let rhs = &(&e2 * &e2) - &e4;
            if lhs.agrees_up_to(&rhs, n) {
                Ok("12 q dE2/dq = E2² - E4".into())
            } else {
                Err("12 q dE2/dq != E2² - E4".into())
            }
        }),
        check("gk-substitution", || {
            for k in [2u32, 4] {
                let n = 24;
                let g = modforms::g_series(k, n).expect("even weight");
                let e = modforms::eisenstein(k, (n + 3) / 4)
                    .expect("even weight")
                    .substitute_power(4)
                    .truncated(n);
                if !g.agrees_up_to(&e, n) {
                    return Err(format!("G_{k} != E_{k}(q^4)"));
                }
            }
            Ok("G_k(q) = E_k(q^4), k = 2, 4".into())
        }),
        check("jacobi-q0", || {
            let series = counts::n_k3two_jacobi(2);
            let c = series.coefficient(0).map_err(|e| e.to_string())?;
            expect(
                "q^0 coefficient",
                c,
                YLaurent::constant(Rational::from(648i64)),
            )
            .map(|_| "648".into())
        }),
        check("jacobi-q1-row", || {
            let series = counts::n_k3two_jacobi(2);
            let c = series.coefficient(1).map_err(|e| e.to_string())?;
            let want = YLaurent::from_terms([
                (2, Rational::from(648i64)),
                (1, Rational::from(3780i64)),
                (0, Rational::from(23760i64)),
                (-1, Rational::from(3780i64)),
                (-2, Rational::from(648i64)),
            ]);
            expect("q^1 coefficient", c, want).map(|v| v.to_string())
        }),
        check("theta-sq-symmetry", || {
            let t2 = modforms::theta_sq(8);
            for d in 0..8 {
                let c = t2.coefficient(d).map_err(|e| e.to_string())?;
                if !c.is_symmetric() {
                    return Err(format!("Θ² not y-symmetric at q^{d}"));
                }
                if !c.eval_at_one().is_zero() {
                    return Err(format!("Θ²|_(y=1) nonzero at q^{d}"));
                }
            }
            Ok("y ↔ 1/y symmetric, vanishes at y = 1".into())
        }),
        check("gr24-four-lines", || {
            let g = Space::grassmannian(2, 4).map_err(|e| e.to_string())?;
            let s1 = ChowClass::schubert(&g, &Partition::row(1));
            expect("∫ σ1^4", s1.pow(4).integral(), Rational::from(2i64))
        }),
        check("lines-on-cubic", || {
            let g = Space::grassmannian(2, 4).map_err(|e| e.to_string())?;
            let c4 = tautological_sub(&g)
                .dual()
                .sym(3)
                .chern_classes(4)
                .swap_remove(4);
            expect("∫ c4(Sym³K^∨)", c4.integral(), Rational::from(27i64))
        }),
        check("gr46-euler-characteristic", || {
            let g = Space::grassmannian(4, 6).map_err(|e| e.to_string())?;
            let top = tangent_bundle(&g).chern_classes(8).swap_remove(8);
            expect("∫ c8(T)", top.integral(), Rational::from(15i64))
        }),
        check("whitney-gr46", || {
            let g = Space::grassmannian(4, 6).map_err(|e| e.to_string())?;
            let product =
                &tautological_sub(&g).total_chern() * &tautological_quotient(&g).total_chern();
            if product == ChowClass::one(&g) {
                Ok("c(K)·c(Q) = 1".into())
            } else {
                Err("c(K)·c(Q) != 1".into())
            }
        }),
        check("pushforward-normalization", || {
            let pt = Space::point();
            let p3 = Space::proj_bundle(&pt, &BundleClass::trivial(&pt, 4))
                .map_err(|e| e.to_string())?;
            let z = ChowClass::hyperplane(&p3);
            expect("∫_{P³} z³", z.pow(3).integral(), Rational::from(1i64))?;
            expect("∫_{P³} z²", z.pow(2).integral(), Rational::from(0i64))
                .map(|_| "π_* z^{r-1} = 1, π_* z^j = 0 below".into())
        }),
        check("o1-line-bundle", || {
            let pt = Space::point();
            let p2 = Space::proj_bundle(&pt, &BundleClass::trivial(&pt, 3))
                .map_err(|e| e.to_string())?;
            expect("rank O(1)", o_one(&p2).rank(), 1)
        }),
    ]
}

fn full_checks() -> Vec<Check> {
    let mut checks = quick_checks();
    checks.push(check("lines-on-quintic", || {
        let g = Space::grassmannian(2, 5).map_err(|e| e.to_string())?;
        let c6 = tautological_sub(&g)
            .dual()
            .sym(5)
            .chern_classes(6)
            .swap_remove(6);
        expect("∫ c6(Sym⁵K^∨)", c6.integral(), Rational::from(2875i64))
    }));
    checks.push(check("k3two-cross-method-s24", || {
        let jacobi = counts::n_k3two_jacobi(counts::jacobi_order_for(24));
        let gamma0 = counts::n_k3two_gamma0(25).map_err(|e| e.to_string())?;
        for s in 0..=24i64 {
            let a = counts::n_k3two_from_series(&jacobi, s).map_err(|e| e.to_string())?;
            let b = gamma0.coefficient(s).map_err(|e| e.to_string())?;
            if a != b {
                return Err(format!("methods disagree at s = {s}: {a} vs {b}"));
            }
        }
        Ok("jacobi = gamma0 for all s ≤ 24".into())
    }));
    checks.push(check("fano", || {
        let tower = FanoTower::build().map_err(|e| e.to_string())?;
        let curve = tower.curve_class();
        let (integral, genus) = tower
            .genus_from_curve_class(&curve)
            .map_err(|e| e.to_string())?;
        expect(
            "fano-genus adjunction integral",
            integral,
            Rational::from(1260i64),
        )?;
        expect("fano genus", genus, 631)?;
        let divisor = tower.discriminant_divisor();
        expect(
            "fano j-degree",
            (&curve * &divisor).integral(),
            Rational::from(3780i64),
        )?;
        let euler = tower.discriminant_divisor_via_euler();
        if euler != divisor {
            return Err("discriminant divisor routes disagree".into());
        }
        expect(
            "fano j-degree (euler route)",
            (&curve * &euler).integral(),
            Rational::from(3780i64),
        )
        .map(|_| "2g-2 = 1260, g = 631, j-degree = 3780 (both routes)".into())
    }));
    checks
}

fn run_selftest(level: Level) -> Result<(), CliError> {
    let checks = match level {
        Level::Quick => quick_checks(),
        Level::Full => full_checks(),
    };
    let mut failures = 0usize;
    for c in &checks {
        match (c.run)() {
            Ok(value) => println!("{}: {} ok", c.name, value),
            Err(detail) => {
                failures += 1;
                println!("{}: FAIL {}", c.name, detail);
            }
        }
    }
    println!("selftest: {} checks, {} failed", checks.len(), failures);
    if failures > 0 {
        Err(CliError::Invariant(format!(
            "{failures} self-test check(s) failed"
        )))
    } else {
        Ok(())
    }
}
