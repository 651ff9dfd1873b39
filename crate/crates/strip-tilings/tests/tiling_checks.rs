//! Structural checks on the bundled example windows.

use num_bigint::BigInt;
use strip_tilings::fixtures::{figure2_window, figure4_printed, figure4_seeds, figure4_window};
use strip_tilings::tiling::{determinant_fill, ptolemy_report, PtolemyOptions};

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[test]
fn enough_ones_window_passes_every_check() {
    let w = figure2_window();
    assert!(w.check_determinants().is_empty());
    assert!(w.ones_quadrant_check().is_empty());
    assert!(w.repeated_value_check().is_empty());
    let report = ptolemy_report(&w, &PtolemyOptions::default()).unwrap();
    assert!(report.is_clean(), "{:?}", report.violations);
    assert!(report.checked.iter().all(|&(_, n)| n > 0));
    let lin = w.linearization().unwrap();
    assert_eq!(lin.row.len(), 9);
    assert_eq!(lin.column.len(), 9);
}

#[test]
fn derived_value_is_independent_of_the_row_choice() {
    let w = figure2_window();
    // Two hand-picked adjacent-row determinants for the column pair (3, 5).
    let det_at = |i: i64| w.get(i, 3) * w.get(i + 1, 5) - w.get(i, 5) * w.get(i + 1, 3);
    assert_eq!(det_at(4), big(6));
    assert_eq!(det_at(5), big(6));
    assert_eq!(w.d_value(3, 5).unwrap(), big(6));
}

#[test]
fn c_and_d_values_are_positive_everywhere() {
    let w = figure2_window();
    for a in 1..=11 {
        for b in a + 1..=11 {
            assert!(w.c_value(a, b).unwrap() > big(0), "c({a}, {b})");
            assert!(w.d_value(a, b).unwrap() > big(0), "d({a}, {b})");
        }
    }
}

#[test]
fn single_one_window_regenerates_from_its_seed() {
    assert_eq!(figure4_window(), figure4_printed());
    let w = figure4_printed();
    assert!(w.check_determinants().is_empty());
    assert_eq!(w.ones(), vec![(0, 0)]);
    // The seed entries are reproduced verbatim.
    for ((i, j), v) in figure4_seeds() {
        assert_eq!(*w.get(i, j), v);
    }
}

#[test]
fn filling_a_proper_subwindow_matches_the_printed_block() {
    let seeds: Vec<_> = figure4_seeds()
        .into_iter()
        .filter(|((i, j), _)| (-3..=3).contains(i) && (-3..=3).contains(j))
        .collect();
    let w = determinant_fill(&seeds, (-3, 3), (-3, 3)).unwrap();
    let printed = figure4_printed();
    for i in -3..=3 {
        for j in -3..=3 {
            assert_eq!(w.get(i, j), printed.get(i, j));
        }
    }
}

#[test]
fn corrupting_one_entry_is_caught() {
    let printed = figure4_printed();
    let values = (-5..=5)
        .map(|i| {
            (-5..=5)
                .map(|j| {
                    if (i, j) == (2, 3) {
                        printed.get(i, j) + 1
                    } else {
                        printed.get(i, j).clone()
                    }
                })
                .collect()
        })
        .collect();
    let corrupt = strip_tilings::TilingWindow::new((-5, 5), (-5, 5), values).unwrap();
    let violations = corrupt.check_determinants();
    assert!(!violations.is_empty());
    // Every reported block touches the corrupted cell.
    for v in violations {
        assert!((v.i == 2 || v.i == 1) && (v.j == 3 || v.j == 2), "{v:?}");
    }
}
