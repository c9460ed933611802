use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use magicsq::cda::AlgLabel;
use magicsq::liean::analyze;
use magicsq::props;
use magicsq::serial::{read_lie, serialize_lie, write_atomic, SerialError};
use magicsq::squares::{
    all_cell_keys, build_square, embed_row_step, golden_check, row_sequence, verify_cell, CellKey, CellStore, Family,
    GoldenTables, Level, SequenceTag, SquareReport,
};
use magicsq::titslie::{check_jacobi, JacobiMode};

#[derive(Parser)]
#[command(name = "magicsq", version, about = "Exact magic-square Lie algebras over rank-3 Jordan algebras")]
struct Cli {
    /// Keep structure constants in memory only.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Markdown,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build and identify a 4×4 square.
    Table {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_tag)]
        rows: SequenceTag,
        #[arg(long, value_parser = parse_tag)]
        cols: SequenceTag,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build and analyze one cell L(row, col).
    Cell {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_alg)]
        row: AlgLabel,
        #[arg(long, value_parser = parse_alg)]
        col: AlgLabel,
        /// Write the structure constants to this file.
        #[arg(long)]
        emit_sc: Option<PathBuf>,
    },
    /// Jacobi, Killing nondegeneracy and property suites over all 98 cells.
    Verify {
        #[arg(long, value_enum, default_value = "quick")]
        level: LevelArg,
        /// Sample this many Jacobi triples per cell instead.
        #[arg(long)]
        jacobi_sample: Option<u64>,
        #[arg(long, default_value_t = props::DEFAULT_SEED)]
        seed: u64,
    },
    /// Analyze a structure-constant file.
    Identify {
        #[arg(long)]
        sc: PathBuf,
    },
    /// Embed row k of a square into row k+1 and report the commutant.
    Embed {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long, value_parser = parse_tag, default_value = "plain")]
        rows: SequenceTag,
        /// Column sequence the --col algebra must belong to.
        #[arg(long, value_parser = parse_tag)]
        cols: Option<SequenceTag>,
        #[arg(long, value_parser = parse_alg)]
        col: AlgLabel,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        step: u8,
    },
    /// Rebuild all twenty tables and diff them against the golden data.
    GoldenCheck,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_tag(s: &str) -> Result<SequenceTag, String> {
    s.parse()
}

fn parse_alg(s: &str) -> Result<AlgLabel, String> {
    s.parse::<AlgLabel>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let store = if cli.no_cache { CellStore::new() } else { CellStore::from_env() };
    let mut out = std::io::stdout().lock();
    let code = match cli.cmd {
        Cmd::Table { family, rows, cols, format } => table(&store, family, rows, cols, format, &mut out),
        Cmd::Cell { family, row, col, emit_sc } => cell(&store, family, row, col, emit_sc, &mut out),
        Cmd::Verify { level, jacobi_sample, seed } => verify(&store, level, jacobi_sample, seed, &mut out),
        Cmd::Identify { sc } => identify(&store, sc, &mut out),
        Cmd::Embed { family, rows, cols, col, step } => embed(&store, family, rows, cols, col, step as usize, &mut out),
        Cmd::GoldenCheck => golden(&store, &mut out),
    };
    let _ = out.flush();
    ExitCode::from(code)
}

fn usage(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    2
}

fn table(store: &CellStore, family: Family, rows: SequenceTag, cols: SequenceTag, format: Format, out: &mut impl Write) -> u8 {
    let r = build_square(store, &GoldenTables::builtin(), family, rows, cols);
    let _ = match format {
        Format::Text => write_text(&r, out),
        Format::Markdown => write_markdown(&r, out),
        Format::Csv => write_csv(&r, out),
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("reports serialize")),
    };
    if !r.golden_diffs.is_empty() || r.cells.iter().flatten().any(|c| c.result.is_err()) {
        for d in &r.golden_diffs {
            eprintln!("golden diff at ({}, {}): expected {}, found {}", d.row + 1, d.col + 1, d.expected, d.found);
        }
        return 1;
    }
    0
}

fn header(r: &SquareReport) -> String {
    let src = match r.golden_table {
        Some((t, false)) => format!("table {t}"),
        Some((t, true)) => format!("transpose of table {t}"),
        None => "no golden table".into(),
    };
    format!("{}({}, {})  [{}]", r.family, r.row_tag, r.col_tag, src)
}

fn col_labels(r: &SquareReport) -> Vec<String> {
    row_sequence(r.col_tag).iter().map(|a| a.as_str().to_string()).collect()
}

fn write_text(r: &SquareReport, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "{}", header(r))?;
    let names = r.names();
    let w = names.iter().flatten().map(|s| s.len()).max().unwrap_or(0).max(4);
    write!(out, "{:5}", "")?;
    for c in col_labels(r) {
        write!(out, " {c:w$}")?;
    }
    writeln!(out)?;
    for (a, row) in row_sequence(r.row_tag).iter().zip(&names) {
        write!(out, "{:5}", a.as_str())?;
        for n in row {
            write!(out, " {n:w$}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn write_markdown(r: &SquareReport, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "**{}**\n", header(r))?;
    writeln!(out, "| | {} |", col_labels(r).join(" | "))?;
    writeln!(out, "|---|---|---|---|---|")?;
    for (a, row) in row_sequence(r.row_tag).iter().zip(r.names()) {
        writeln!(out, "| {} | {} |", a.as_str(), row.join(" | "))?;
    }
    Ok(())
}

fn write_csv(r: &SquareReport, out: &mut impl Write) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut head = vec![String::new()];
    head.extend(col_labels(r));
    w.write_record(&head)?;
    for (a, row) in row_sequence(r.row_tag).iter().zip(r.names()) {
        let mut rec = vec![a.as_str().to_string()];
        rec.extend(row);
        w.write_record(&rec)?;
    }
    w.flush()
}

fn cell(store: &CellStore, family: Family, row: AlgLabel, col: AlgLabel, emit_sc: Option<PathBuf>, out: &mut impl Write) -> u8 {
    let c = store.get(CellKey::new(family, row, col));
    let l = match &c.lie {
        Ok(l) => l,
        Err(e) => {
            eprintln!("construction failed: {e}");
            return 1;
        }
    };
    if let Some(p) = emit_sc {
        if let Err(e) = write_atomic(&p, &serialize_lie(l)) {
            return usage(&format!("cannot write {}: {e}", p.display()));
        }
    }
    match &c.analysis {
        Ok(a) => {
            let _ = writeln!(out, "{}({}, {}): dim {} chi {} ideals {:?} -> {}", family, row.as_str(), col.as_str(), a.dim, a.chi, a.ideals, a.name());
            let _ = writeln!(out, "killing inertia (+{}, -{}, 0:{})", a.killing_inertia.plus, a.killing_inertia.minus, a.killing_inertia.zero);
            0
        }
        Err(e) => {
            eprintln!("analysis failed: {e}");
            1
        }
    }
}

fn verify(store: &CellStore, level: LevelArg, sample: Option<u64>, seed: u64, out: &mut impl Write) -> u8 {
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let t = Instant::now();
    let mut failures = 0;
    for key in all_cell_keys() {
        let v = match sample {
            None => verify_cell(store, key, level, seed),
            Some(n) => {
                let mut v = verify_cell(store, key, Level::Quick, seed);
                if let Ok(l) = &store.get(key).lie {
                    v.jacobi = check_jacobi(l, JacobiMode::Sample { n, seed });
                    v.exhaustive = false;
                }
                v
            }
        };
        let _ = writeln!(
            out,
            "{} {}({}, {}) dim {:3} jacobi {} triples {} violations {} killing {}",
            if v.ok() { "ok  " } else { "FAIL" },
            key.family,
            key.a.as_str(),
            key.b.as_str(),
            v.dim,
            if v.exhaustive { "full" } else { "sampled" },
            v.jacobi.triples_checked,
            v.jacobi.violation_count,
            if v.killing_nondegenerate() { "nondegenerate" } else { "DEGENERATE" },
        );
        failures += !v.ok() as usize;
    }
    for p in props::run_all(seed) {
        let _ = writeln!(out, "{} {} on {}: {} checked, {} failures", if p.ok() { "ok  " } else { "FAIL" }, p.suite, p.algebra, p.checked, p.failures);
        failures += !p.ok() as usize;
    }
    let _ = writeln!(out, "{} failures in {:.1}s", failures, t.elapsed().as_secs_f64());
    (failures > 0) as u8
}

fn identify(store: &CellStore, sc: PathBuf, out: &mut impl Write) -> u8 {
    let l = match read_lie(&sc) {
        Ok(l) => l,
        Err(e @ (SerialError::BadFormat(_) | SerialError::VersionMismatch { .. } | SerialError::Io(_))) => {
            return usage(&format!("{}: {e}", sc.display()));
        }
    };
    match analyze(&l, store.catalog()) {
        Ok(a) => {
            let _ = writeln!(out, "dim {} chi {} ideals {:?} -> {}", a.dim, a.chi, a.ideals, a.name());
            0
        }
        Err(e) => {
            eprintln!("analysis failed: {e}");
            1
        }
    }
}

fn embed(store: &CellStore, family: Family, rows: SequenceTag, cols: Option<SequenceTag>, col: AlgLabel, step: usize, out: &mut impl Write) -> u8 {
    if let Some(c) = cols {
        if !row_sequence(c).contains(&col) {
            return usage(&format!("{} is not in the {} sequence", col.as_str(), c));
        }
    }
    match embed_row_step(store, family, col, step, rows) {
        Ok(r) => {
            let fmt = |c: Option<(usize, i64)>| c.map_or("-".to_string(), |(d, x)| format!("({d},{x:+})"));
            let mut line = format!(
                "{}({}, {}) row {} -> {}: closed {} dim {} (expected {}) commutant {} expected {}",
                family,
                r.sub.as_str(),
                col.as_str(),
                step,
                step + 1,
                r.closed,
                r.sub_dim,
                r.expected_dim,
                fmt(r.commutant()),
                fmt(r.expected_commutant),
            );
            for f in &r.flags {
                line.push(' ');
                line.push_str(f);
            }
            let _ = writeln!(out, "{line}");
            (!r.ok()) as u8
        }
        Err(e) => usage(&e.to_string()),
    }
}

fn golden(store: &CellStore, out: &mut impl Write) -> u8 {
    let g = GoldenTables::builtin();
    let r = golden_check(store, &g);
    for t in &r.tables {
        let _ = writeln!(out, "table {:2} {}({}, {}): {}", t.table, t.family, t.rows, t.cols, if t.diffs.is_empty() { "match" } else { "DIFF" });
        for d in &t.diffs {
            let _ = writeln!(out, "    ({}, {}) expected {} found {}", d.row + 1, d.col + 1, d.expected, d.found);
        }
    }
    let _ = writeln!(out, "{}/{} tables match ({} cells, {} distinct constructions)", r.tables_matched, r.tables.len(), r.cells_checked, r.distinct_cells);
    let s = store.stats();
    eprintln!("cache: {} requests, {} built, {} loaded", s.requests, s.built, s.loaded);
    (!r.ok()) as u8
}
