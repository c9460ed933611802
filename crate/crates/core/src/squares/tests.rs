use super::*;
use crate::cda::AlgLabel;

#[test]
fn sequences() {
    use AlgLabel::*;
    assert_eq!(row_sequence(SequenceTag::Hat), [R, C, H, OS]);
    assert_eq!(row_sequence(SequenceTag::Split), [R, CS, HS, OS]);
    assert_eq!(row_sequence(SequenceTag::Plain), [R, C, H, O]);
    assert_eq!(row_sequence(SequenceTag::Tilde), [R, C, HS, OS]);
    assert_eq!("tilde".parse::<SequenceTag>().unwrap(), SequenceTag::Tilde);
    assert_eq!("L1,2".parse::<Family>().unwrap(), Family::L12);
    assert!("L4".parse::<Family>().is_err());
}

#[test]
fn golden_expectations_cover_all_sixteen_pairs() {
    let g = GoldenTables::builtin();
    assert_eq!(g.tables.len(), 20);
    for f in Family::ALL {
        let mut direct = 0;
        for r in SequenceTag::ALL {
            for c in SequenceTag::ALL {
                let e = g.expected(f, r, c).unwrap();
                direct += !e.transposed as usize;
            }
        }
        assert_eq!(direct, 10);
    }
    let e = g.expected(Family::L3, SequenceTag::Plain, SequenceTag::Split).unwrap();
    assert_eq!((e.table, e.transposed), (2, true));
    assert_eq!(e.names[0][1], "sl(3,R)");
}

#[test]
fn symmetric_flags_match_grids() {
    let g = GoldenTables::builtin();
    let sym: Vec<u32> = g.tables.iter().filter(|t| t.symmetric).map(|t| t.table).collect();
    assert_eq!(sym, vec![1, 3, 6, 9, 11, 13, 16, 19]);
    for t in &g.tables {
        let grid_sym = t.rows == t.cols && (0..4).all(|i| (0..4).all(|j| t.names[i][j] == t.names[j][i]));
        assert_eq!(grid_sym, t.symmetric, "table {}", t.table);
    }
}

#[test]
fn every_golden_name_is_in_the_catalog() {
    let g = GoldenTables::builtin();
    let c = crate::liean::Catalog::builtin();
    for t in &g.tables {
        for n in t.names.iter().flatten() {
            assert!(c.by_name(n).is_some(), "{n}");
        }
    }
}

#[test]
fn small_square_and_cache_reuse() {
    let store = CellStore::new();
    let g = GoldenTables::builtin();
    // Only the first two rows and columns are cheap; build them directly.
    for (a, b) in [(AlgLabel::R, AlgLabel::R), (AlgLabel::C, AlgLabel::R), (AlgLabel::R, AlgLabel::C), (AlgLabel::C, AlgLabel::C)] {
        let x = store.get(CellKey::new(Family::L12, a, b));
        let y = store.get(CellKey::new(Family::L12, a, b));
        assert!(std::sync::Arc::ptr_eq(&x, &y));
    }
    assert_eq!(store.distinct(), 4);
    assert_eq!(store.stats(), CacheStats { requests: 8, built: 4, loaded: 0 });
    let names: Vec<_> = [(AlgLabel::R, AlgLabel::R), (AlgLabel::C, AlgLabel::C)]
        .iter()
        .map(|&(a, b)| store.get(CellKey::new(Family::L12, a, b)).analysis.as_ref().unwrap().name().to_string())
        .collect();
    assert_eq!(names, ["sl(2,R)", "su(2,1)xsu(2,1)"]);
    let t11 = g.table(Family::L12, SequenceTag::Plain, SequenceTag::Plain).unwrap();
    assert_eq!(t11.names[0][0], names[0]);
    assert_eq!(t11.names[1][1], names[1]);
}

#[test]
fn disk_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let key = CellKey::new(Family::L3, AlgLabel::H, AlgLabel::R);
    let cold = CellStore::with_dir(dir.path());
    let a = cold.get(key);
    assert_eq!(cold.stats().built, 1);
    assert!(dir.path().join(key.file_name()).exists());
    let warm = CellStore::with_dir(dir.path());
    let b = warm.get(key);
    assert_eq!(warm.stats(), CacheStats { requests: 1, built: 0, loaded: 1 });
    assert_eq!(a.lie, b.lie);
    assert_eq!(a.analysis, b.analysis);
    // A corrupt file is rebuilt.
    std::fs::write(dir.path().join(key.file_name()), b"{").unwrap();
    let again = CellStore::with_dir(dir.path());
    assert_eq!(again.get(key).analysis, a.analysis);
    assert_eq!(again.stats().built, 1);
}

#[test]
fn embedding_steps_small_column() {
    let store = CellStore::new();
    // su(3) ⊂ usp(6) with a U(1) commutant, over the ℝ column.
    let r = embed_row_step(&store, Family::L3, AlgLabel::R, 2, SequenceTag::Plain).unwrap();
    assert!(r.closed && r.dim_ok, "{r:?}");
    assert_eq!(r.commutant(), Some((1, -1)));
    // sl(3,ℝ) ⊂ sp(6,ℝ) with SO(1,1).
    let r = embed_row_step(&store, Family::L3, AlgLabel::R, 2, SequenceTag::Split).unwrap();
    assert!(r.ok(), "{r:?}");
    assert_eq!(r.commutant(), Some((1, 1)));
    assert_eq!(embed_row_step(&store, Family::L3, AlgLabel::R, 4, SequenceTag::Split).unwrap_err(), SquaresError::BadStep(4));
}

#[test]
fn split_first_step_has_trivial_commutant() {
    // so(3) = L₃(ℝ,ℝ) inside sl(3,ℝ) = L₃(ℂ_S,ℝ): the centralizer is zero.
    let store = CellStore::new();
    let r = embed_row_step(&store, Family::L3, AlgLabel::R, 1, SequenceTag::Split).unwrap();
    assert!(r.closed && r.dim_ok);
    assert_eq!(r.commutant(), Some((0, 0)));
}

#[test]
fn derivation_algebra_rejects_open_spans() {
    let e = |i: usize, j: usize| {
        let mut m = MatrixQ::zeros(2, 2);
        m.set(i, j, crate::exactla::rint(1));
        m
    };
    use crate::exactla::MatrixQ;
    assert!(derivation_algebra(&[e(0, 1), e(1, 0)]).is_none());
    let sl2 = derivation_algebra(&[e(0, 1), e(1, 0), e(0, 0).sub(&e(1, 1))]).unwrap();
    assert_eq!(crate::liean::character(&sl2).unwrap(), 1);
}

#[test]
fn verification_of_small_cells() {
    let store = CellStore::new();
    let keys = all_cell_keys();
    assert_eq!(keys.len(), 98);
    let small: Vec<CellKey> = keys.into_iter().filter(|k| k.a.dim() <= 2 && k.b.dim() <= 2).collect();
    for v in verify_cells(&store, &small, Level::Quick, 1) {
        assert!(v.ok(), "{v:?}");
        assert!(v.exhaustive);
    }
}
