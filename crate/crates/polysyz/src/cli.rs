//! Command-line front end: verdict reports, chamber sweeps, the Koszul
//! ground-truth check, and built-in reference tables.
//!
//! Exit codes: 0 success, 1 malformed flags or caps exceeded, 2 non-generic
//! input (the offending subset is named on stderr), 3 verdict mismatch in
//! `table`, `koszul-check`, or `selftest`. Golden-file tests read their
//! working directory from `POLYSYZ_GOLDEN_DIR`.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::chainspace::{
    self, format_rational, parse_rational, ChainSpaceError, ChainSpaceParams, LengthVector,
};
use crate::homology::{homological_dimension, syzygy_order, SyzygyOrder};
use crate::koszul::koszul_image_presentation;
use crate::subset::subsets_of_size;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "polysyz",
    version,
    about = "Syzygy orders of big chain and polygon space cohomology over F2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full verdict report for one parameter point
    Report {
        /// Number of hyperplane cuts (at least 2)
        #[arg(long)]
        m: u32,
        /// Exponent of the matrix entries (at least 1)
        #[arg(long)]
        n: u32,
        /// Comma-separated positive rational lengths, e.g. 1,1,1 or 1/2,3
        #[arg(long)]
        l: String,
        /// Non-negative rational threshold
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Append the connecting matrix and both relation matrices
        #[arg(long)]
        dump_matrices: bool,
        /// Cap on the rank accepted for full syzygy computation
        #[arg(long, default_value_t = 6)]
        max_r: usize,
    },
    /// One verdict row per chamber of the threshold half-line
    Sweep {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        l: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 6)]
        max_r: usize,
    },
    /// Check the Koszul ground truth: image j has order j and hdim r - j
    KoszulCheck {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 6)]
        max_r: usize,
    },
    /// Reproduce a built-in reference table and compare verdicts
    Table {
        /// One of 3.15, 3.19-1, 3.19-2, 3.19-3
        #[arg(long)]
        example: String,
        /// Scale parameter for the scalable tables
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, default_value_t = 6)]
        max_r: usize,
    },
    #[command(hide = true)]
    Selftest {
        /// Seed for the randomized property sampling
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: u32,
    },
}

/// Runs the CLI on the given arguments and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Report {
            m,
            n,
            l,
            c,
            format,
            dump_matrices,
            max_r,
        } => cmd_report(m, n, &l, &c, format, dump_matrices, max_r),
        Command::Sweep {
            m,
            n,
            l,
            format,
            max_r,
        } => cmd_sweep(m, n, &l, format, max_r),
        Command::KoszulCheck { r, max_r } => cmd_koszul_check(r, max_r),
        Command::Table { example, k, max_r } => cmd_table(&example, k, max_r),
        Command::Selftest { seed, cases } => cmd_selftest(seed, cases),
    }
}

fn fail(code: i32, message: &str) -> i32 {
    eprintln!("error: {message}");
    code
}

fn exit_code_for(err: &ChainSpaceError) -> i32 {
    match err {
        ChainSpaceError::NonGeneric { .. } => 2,
        _ => 1,
    }
}

fn build_params(
    m: u32,
    n: u32,
    l: &str,
    c: &str,
    max_r: usize,
) -> Result<ChainSpaceParams, (i32, String)> {
    let ell = LengthVector::parse(l).map_err(|e| (1, e.to_string()))?;
    if ell.r() > max_r {
        return Err((
            1,
            format!("r = {} exceeds the cap --max-r = {max_r}", ell.r()),
        ));
    }
    let c = parse_rational(c).map_err(|e| (1, e.to_string()))?;
    ChainSpaceParams::new(m, n, ell, c).map_err(|e| (exit_code_for(&e), e.to_string()))
}

fn cmd_report(
    m: u32,
    n: u32,
    l: &str,
    c: &str,
    format: Format,
    dump_matrices: bool,
    max_r: usize,
) -> i32 {
    let params = match build_params(m, n, l, c, max_r) {
        Ok(p) => p,
        Err((code, msg)) => return fail(code, &msg),
    };
    let report = params.full_report();
    match format {
        Format::Text => print!("{}", report.render_text(dump_matrices)),
        Format::Json => println!("{}", report.to_json_string()),
    }
    0
}

#[derive(Serialize)]
struct SweepRowJson {
    lo: String,
    hi: Option<String>,
    c: String,
    long_count: usize,
    #[serde(rename = "dim_H")]
    dim_h: u64,
    #[serde(rename = "dim_H_fixed")]
    dim_h_fixed: u64,
    verdict: String,
    free_rank: Option<usize>,
}

fn verdict_of(order: SyzygyOrder, zero_module: bool) -> String {
    if zero_module {
        "ZERO".to_string()
    } else {
        order.to_string()
    }
}

fn cmd_sweep(m: u32, n: u32, l: &str, format: Format, max_r: usize) -> i32 {
    let ell = match LengthVector::parse(l) {
        Ok(e) => e,
        Err(e) => return fail(1, &e.to_string()),
    };
    if ell.r() > max_r {
        return fail(1, &format!("r = {} exceeds the cap --max-r = {max_r}", ell.r()));
    }
    let rows = match chainspace::sweep(m, n, &ell) {
        Ok(rows) => rows,
        Err(e) => return fail(exit_code_for(&e), &e.to_string()),
    };
    match format {
        Format::Text => {
            println!(
                "{:<16} {:>8} {:>6} {:>7} {:>9} {:>8} {:>10}",
                "chamber", "c", "|L_c|", "dim H", "dim H^G", "verdict", "free rank"
            );
            for row in &rows {
                let interval = match &row.chamber.hi {
                    Some(hi) => format!(
                        "({}, {})",
                        format_rational(&row.chamber.lo),
                        format_rational(hi)
                    ),
                    None => format!("({}, inf)", format_rational(&row.chamber.lo)),
                };
                println!(
                    "{:<16} {:>8} {:>6} {:>7} {:>9} {:>8} {:>10}",
                    interval,
                    format_rational(&row.chamber.representative),
                    row.long_count,
                    row.dim_h,
                    row.dim_h_fixed,
                    verdict_of(row.order, row.zero_module),
                    row.free_rank
                        .map(|r| r.to_string())
                        .unwrap_or_else(|| "-".to_string()),
                );
            }
        }
        Format::Json => {
            let dto: Vec<SweepRowJson> = rows
                .iter()
                .map(|row| SweepRowJson {
                    lo: format_rational(&row.chamber.lo),
                    hi: row.chamber.hi.as_ref().map(format_rational),
                    c: format_rational(&row.chamber.representative),
                    long_count: row.long_count,
                    dim_h: row.dim_h,
                    dim_h_fixed: row.dim_h_fixed,
                    verdict: verdict_of(row.order, row.zero_module),
                    free_rank: row.free_rank,
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&dto).expect("rows serialize"));
        }
    }
    0
}

fn cmd_koszul_check(r: usize, max_r: usize) -> i32 {
    if r == 0 || r > max_r {
        return fail(1, &format!("--r must lie in 1..={max_r}"));
    }
    let mut ok = true;
    for j in 1..=r {
        let p = koszul_image_presentation(r, j).expect("r and j validated");
        let order = syzygy_order(&p);
        let hdim = homological_dimension(&p);
        let want_order = if j == r {
            SyzygyOrder::Free
        } else {
            SyzygyOrder::Order(j as u32)
        };
        let line_ok = order == want_order && hdim == r - j;
        ok &= line_ok;
        println!(
            "image {j} of {r}: order {order} (expected {want_order}), hdim {hdim} (expected {}) {}",
            r - j,
            if line_ok { "ok" } else { "MISMATCH" }
        );
    }
    if ok {
        0
    } else {
        3
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expected {
    Order(u32),
    Free,
    Zero,
}

impl std::fmt::Display for Expected {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expected::Order(k) => write!(f, "{k}"),
            Expected::Free => write!(f, "FREE"),
            Expected::Zero => write!(f, "ZERO"),
        }
    }
}

fn sweep_against(
    m: u32,
    n: u32,
    ell: &LengthVector,
    expected: &[Expected],
) -> Result<bool, (i32, String)> {
    let rows = chainspace::sweep(m, n, ell).map_err(|e| (exit_code_for(&e), e.to_string()))?;
    if rows.len() != expected.len() {
        return Err((
            3,
            format!("expected {} chambers, found {}", expected.len(), rows.len()),
        ));
    }
    let mut all_ok = true;
    for (row, want) in rows.iter().zip(expected) {
        let got = verdict_of(row.order, row.zero_module);
        let line_ok = got == want.to_string();
        all_ok &= line_ok;
        let interval = match &row.chamber.hi {
            Some(hi) => format!(
                "({}, {})",
                format_rational(&row.chamber.lo),
                format_rational(hi)
            ),
            None => format!("({}, inf)", format_rational(&row.chamber.lo)),
        };
        println!(
            "{:<16} c={:<6} computed {:<6} expected {:<6} {}",
            interval,
            format_rational(&row.chamber.representative),
            got,
            want,
            if line_ok { "ok" } else { "MISMATCH" }
        );
    }
    Ok(all_ok)
}

fn cmd_table(example: &str, k: Option<u32>, max_r: usize) -> i32 {
    let result = match example {
        "3.15" => table_maximal_block(k.unwrap_or(1), max_r),
        "3.19-1" => {
            let k = k.unwrap_or(1);
            let r = 2 * k as usize + 1;
            if r > max_r {
                return fail(1, &format!("r = {r} exceeds the cap --max-r = {max_r}"));
            }
            let ell = LengthVector::from_integers(&vec![1; r]).expect("unit lengths");
            // order k below the first wall, then free of decreasing rank, then zero
            let mut expected = vec![Expected::Order(k)];
            for _ in 0..(k as usize) {
                expected.push(Expected::Free);
            }
            expected.push(Expected::Zero);
            println!("lengths (1,...,1) with r = {r}:");
            sweep_against(2, 1, &ell, &expected)
        }
        "3.19-2" => {
            let k = k.unwrap_or(2);
            if k == 0 {
                return fail(1, "this table needs k >= 1");
            }
            let r = 2 * k as usize + 1;
            if r > max_r {
                return fail(1, &format!("r = {r} exceeds the cap --max-r = {max_r}"));
            }
            let mut lengths = vec![2i64, 2];
            lengths.extend(std::iter::repeat(3).take(r - 2));
            let ell = LengthVector::from_integers(&lengths).expect("valid lengths");
            let chamber_count = chainspace::chambers(&ell).len();
            let mut expected = vec![Expected::Order(k), Expected::Order(k - 1)];
            while expected.len() < chamber_count - 1 {
                expected.push(Expected::Free);
            }
            expected.push(Expected::Zero);
            println!("lengths (2,2,3,...,3) with r = {r}:");
            sweep_against(2, 1, &ell, &expected)
        }
        "3.19-3" => {
            let ell = LengthVector::from_integers(&[2, 2, 2, 3]).expect("valid lengths");
            let chamber_count = chainspace::chambers(&ell).len();
            let mut expected = vec![Expected::Order(0)];
            while expected.len() < chamber_count - 1 {
                expected.push(Expected::Free);
            }
            expected.push(Expected::Zero);
            println!("lengths (2,2,2,3):");
            sweep_against(2, 1, &ell, &expected)
        }
        other => return fail(1, &format!("unknown example id `{other}`")),
    };
    match result {
        Ok(true) => 0,
        Ok(false) => 3,
        Err((code, msg)) => fail(code, &msg),
    }
}

/// The maximal-order scenario: unit lengths with r = 2k+1 at threshold zero.
/// Checks the computed order and that the connecting matrix is exactly the
/// middle Koszul differential padded by zero rows and columns.
fn table_maximal_block(k: u32, max_r: usize) -> Result<bool, (i32, String)> {
    let r = 2 * k as usize + 1;
    if r > max_r {
        return Err((1, format!("r = {r} exceeds the cap --max-r = {max_r}")));
    }
    let ell = LengthVector::from_integers(&vec![1; r]).expect("unit lengths");
    let params = ChainSpaceParams::new(2, 1, ell, 0.into())
        .map_err(|e| (exit_code_for(&e), e.to_string()))?;
    let report = params.full_report();
    let mut ok = true;

    let want = SyzygyOrder::Order(k);
    let order_ok = report.order == want && !report.free;
    ok &= order_ok;
    println!(
        "order: computed {} expected {k}, free: {} {}",
        report.order,
        report.free,
        if order_ok { "ok" } else { "MISMATCH" }
    );

    let structure_ok = if k == 0 {
        // r = 1: the matrix is the single entry t1
        report.iota.matrix.to_text_rows() == vec!["t1".to_string()]
    } else {
        let delta = crate::koszul::koszul_differential(r, k as usize + 1).expect("valid sizes");
        let small_rows = subsets_of_size(r, k as usize).len();
        let row_offset = report.iota.rows.len() - small_rows;
        let col_block = subsets_of_size(r, k as usize + 1).len();
        let mut matches = true;
        for i in 0..report.iota.rows.len() {
            for j in 0..report.iota.cols.len() {
                let entry = report.iota.matrix.entry(i, j);
                let expected_zero = i < row_offset || j >= col_block;
                if expected_zero {
                    matches &= entry.is_zero();
                } else {
                    matches &= entry == delta.entry(i - row_offset, j);
                }
            }
        }
        matches
    };
    ok &= structure_ok;
    println!(
        "connecting matrix = padded middle Koszul differential: {}",
        if structure_ok { "ok" } else { "MISMATCH" }
    );
    Ok(ok)
}

fn cmd_selftest(seed: u64, cases: u32) -> i32 {
    let summary = crate::selftest::run(seed, cases);
    println!(
        "selftest: {} cases, {} checks, {} failures",
        summary.cases,
        summary.checks,
        summary.failures.len()
    );
    for f in &summary.failures {
        println!("  {f}");
    }
    if summary.passed() {
        0
    } else {
        3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        run(std::iter::once("polysyz").chain(args.iter().copied()))
    }

    #[test]
    fn report_ok() {
        assert_eq!(
            run_args(&["report", "--m", "2", "--n", "1", "--l", "1,1,1", "--c", "0"]),
            0
        );
    }

    #[test]
    fn report_non_generic_exits_2() {
        assert_eq!(
            run_args(&["report", "--m", "2", "--n", "1", "--l", "1,1", "--c", "0"]),
            2
        );
    }

    #[test]
    fn malformed_flags_exit_1() {
        assert_eq!(run_args(&["report", "--m", "2"]), 1);
        assert_eq!(run_args(&["report", "--m", "x", "--n", "1", "--l", "1", "--c", "0"]), 1);
        assert_eq!(run_args(&["frobnicate"]), 1);
        assert_eq!(
            run_args(&["table", "--example", "9.99"]),
            1
        );
    }

    #[test]
    fn max_r_cap() {
        assert_eq!(
            run_args(&[
                "report", "--m", "2", "--n", "1", "--l", "1,2,4,8,16,32,64", "--c", "0"
            ]),
            1
        );
    }

    #[test]
    fn koszul_check_small() {
        assert_eq!(run_args(&["koszul-check", "--r", "3"]), 0);
        assert_eq!(run_args(&["koszul-check", "--r", "0"]), 1);
        assert_eq!(run_args(&["koszul-check", "--r", "7"]), 1);
    }

    #[test]
    fn tables_pass() {
        assert_eq!(run_args(&["table", "--example", "3.15", "--k", "1"]), 0);
        assert_eq!(run_args(&["table", "--example", "3.19-1", "--k", "1"]), 0);
        assert_eq!(run_args(&["table", "--example", "3.19-3"]), 0);
    }

    #[test]
    fn selftest_command() {
        assert_eq!(run_args(&["selftest", "--seed", "3", "--cases", "5"]), 0);
    }
}
