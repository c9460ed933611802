use std::process::ExitCode;
use std::time::Instant;

use magicsq::cda::AlgLabel;
use magicsq::props;
use magicsq::squares::*;

struct Report {
    failed: usize,
}

impl Report {
    fn line(&mut self, n: u32, pass: bool, detail: String) {
        self.failed += !pass as usize;
        println!("{} criterion {n:2}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
}

fn inv(store: &CellStore, f: Family, a: AlgLabel, b: AlgLabel) -> Option<(usize, i64)> {
    store.get(CellKey::new(f, a, b)).analysis.as_ref().ok().map(|r| (r.dim, r.chi))
}

fn binom3(n: u64) -> u64 {
    n * (n - 1) * (n - 2) / 6
}

fn main() -> ExitCode {
    let start = Instant::now();
    let store = CellStore::new();
    let golden = GoldenTables::builtin();
    let mut r = Report { failed: 0 };
    use AlgLabel::*;
    use Family::*;

    // 1. Exact name-for-name match of all twenty tables.
    let t = Instant::now();
    let g = golden_check(&store, &golden);
    let named = [1, 3, 11].iter().all(|n| g.tables.iter().any(|o| o.table == *n && o.diffs.is_empty()));
    r.line(
        1,
        g.ok() && g.tables.len() == 20 && g.cells_checked == 320 && named,
        format!(
            "{}/{} tables, {} cells, {} distinct constructions, {:.1}s cold",
            g.tables_matched,
            g.tables.len(),
            g.cells_checked,
            g.distinct_cells,
            t.elapsed().as_secs_f64()
        ),
    );

    // 2. Spot dimensions and characters.
    let ders = derivation_check(&store);
    let der_j12_o = ders.iter().find(|d| d.kind == 'J' && d.base == O && d.epsilon == Some(-1)).map(|d| (d.dim, d.chi.unwrap_or(0)));
    let spots = [
        ("L3(O,O)", inv(&store, L3, O, O), (248, -248)),
        ("L3(O_S,O_S)", inv(&store, L3, OS, OS), (248, 8)),
        ("L12(O,O)", inv(&store, L12, O, O), (248, 8)),
        ("L12(O_S,O)", inv(&store, L12, OS, O), (248, -24)),
        ("Der J12(O)", der_j12_o, (52, -20)),
    ];
    let detail: Vec<String> = spots.iter().map(|(n, got, _)| format!("{n} {got:?}")).collect();
    r.line(2, spots.iter().all(|(_, got, want)| *got == Some(*want)), detail.join(", "));

    // 3 and 4. Full Jacobi enumeration and exact Killing inertia on every cell.
    let t = Instant::now();
    let cells = verify_cells(&store, &all_cell_keys(), Level::Full, props::DEFAULT_SEED);
    let triples: u64 = cells.iter().map(|c| c.jacobi.triples_checked).sum();
    let violations: u64 = cells.iter().map(|c| c.jacobi.violation_count).sum();
    let big: Vec<u64> = cells.iter().filter(|c| c.dim == 248).map(|c| c.jacobi.triples_checked).collect();
    let full = cells.iter().all(|c| c.exhaustive && c.jacobi.triples_checked == binom3(c.dim as u64));
    r.line(
        3,
        cells.len() == 98 && violations == 0 && full && cells.iter().all(|c| c.error.is_none()),
        format!(
            "{} cells, {} triples, {} violations, {} cells of dim 248 with {} triples each (C(248,3) = {}), {:.1}s",
            cells.len(),
            triples,
            violations,
            big.len(),
            big.first().copied().unwrap_or(0),
            binom3(248),
            t.elapsed().as_secs_f64()
        ),
    );
    let nondeg = cells.iter().filter(|c| c.killing_nondegenerate()).count();
    r.line(4, nondeg == cells.len(), format!("{nondeg}/{} cells with zero Killing kernel", cells.len()));

    // 5. Symmetric squares and the 98 ordered-pair swaps.
    let mut sym_ok = 0;
    for f in Family::ALL {
        for tag in SequenceTag::ALL {
            let s = symmetry_check(&store, &golden, f, tag, tag);
            sym_ok += (s.ok() && s.transpose_equal && s.golden_symmetric == Some(true)) as usize;
        }
    }
    let v = vinberg_check(&store);
    r.line(
        5,
        sym_ok == 8 && v.pairs_checked == 98 && v.mismatches.is_empty(),
        format!("{sym_ok}/8 symmetric squares equal their transposes, {} ordered pairs with {} mismatches", v.pairs_checked, v.mismatches.len()),
    );

    // 6. Derivation algebras.
    let mut a_dims: Vec<usize> = ders.iter().filter(|d| d.kind == 'A').map(|d| d.dim).collect();
    a_dims.sort();
    let j = |eps: i8| -> Vec<(usize, i64)> {
        row_sequence(SequenceTag::Plain)
            .iter()
            .map(|b| ders.iter().find(|d| d.kind == 'J' && d.base == *b && d.epsilon == Some(eps)).map_or((0, 0), |d| (d.dim, d.chi.unwrap_or(0))))
            .collect()
    };
    let (j3, j12) = (j(1), j(-1));
    r.line(
        6,
        a_dims == [0, 0, 0, 3, 3, 14, 14] && j3 == [(3, -3), (8, -8), (21, -21), (52, -52)] && j12 == [(3, 1), (8, 0), (21, -5), (52, -20)],
        format!("Der(A) dims {a_dims:?}, Der(J3) {j3:?}, Der(J12) {j12:?}"),
    );

    // 7. Str0 against the C_S row.
    let s = str0_check(&store);
    let s_ok = s.iter().filter(|o| o.ok()).count();
    r.line(7, s.len() == 14 && s_ok == 14, format!("{s_ok}/{} bases agree with L(C_S, B)", s.len()));

    // 8. Embedding chain over the O column of the Lorentzian square.
    let mut emb = Vec::new();
    for (tag, step) in [(SequenceTag::Plain, 2), (SequenceTag::Plain, 3), (SequenceTag::Split, 2), (SequenceTag::Split, 3)] {
        emb.push(embed_row_step(&store, L12, O, step, tag));
    }
    let want = [(1, -1), (3, -3), (1, 1), (3, 1)];
    let e_ok = emb.iter().zip(want).all(|(e, w)| e.as_ref().is_ok_and(|e| e.ok() && e.closed && e.dim_ok && e.commutant() == Some(w)));
    let detail: Vec<String> = emb
        .iter()
        .map(|e| match e {
            Ok(e) => format!("{} step {} closed {} dim {} commutant {:?}", e.row_tag, e.step, e.closed, e.sub_dim, e.commutant()),
            Err(err) => err.to_string(),
        })
        .collect();
    r.line(8, e_ok, detail.join("; "));

    // 9. Maximal compact dimension of the C_S row.
    let m: Vec<_> = row_sequence(SequenceTag::Plain).iter().map(|&b| mcs_check(&store, b)).collect();
    let detail: Vec<String> = m.iter().flatten().map(|o| format!("{} ({},{})->{}", o.col, o.str0_dim, o.str0_chi, o.aut_dim)).collect();
    r.line(9, m.iter().all(|o| o.as_ref().is_some_and(|o| o.ok())), detail.join(", "));

    // 10. Property suites.
    let t = Instant::now();
    let p = props::run_all(props::DEFAULT_SEED);
    let checked: usize = p.iter().map(|o| o.checked).sum();
    let fails: usize = p.iter().map(|o| o.failures).sum();
    r.line(10, fails == 0 && !p.is_empty(), format!("{} suite runs, {checked} checks, {fails} failures, {:.1}s", p.len(), t.elapsed().as_secs_f64()));

    println!("{} of 10 criteria failed, {:.1}s total", r.failed, start.elapsed().as_secs_f64());
    if r.failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
