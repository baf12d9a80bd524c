//! Bundled datasets against the published magic-number columns.

use qshell::ExperimentalDataset;

fn entries(name: &str) -> Vec<(u32, u32, bool)> {
    ExperimentalDataset::bundled(name)
        .unwrap()
        .entries()
        .iter()
        .map(|e| (e.value, e.uncertainty, e.parenthesized))
        .collect()
}

fn bare(values: &[u32]) -> Vec<(u32, u32, bool)> {
    values.iter().map(|&v| (v, 0, false)).collect()
}

#[test]
fn martin() {
    let mut expected = bare(&[2, 8, 18, 20, 34, 40, 58, 90, 92, 138]);
    expected.extend([
        (198, 2, false),
        (263, 5, false),
        (341, 5, false),
        (443, 5, false),
        (557, 5, false),
        (700, 15, false),
        (840, 15, false),
        (1040, 20, false),
        (1220, 20, false),
        (1430, 20, false),
    ]);
    assert_eq!(entries("martin"), expected);
}

#[test]
fn bjornholm() {
    let mut expected = bare(&[2, 8, 20, 40, 58, 92, 138, 196]);
    expected.extend([
        (260, 4, false),
        (344, 4, false),
        (440, 2, false),
        (558, 8, false),
    ]);
    assert_eq!(entries("bjornholm"), expected);
}

#[test]
fn bare_experimental_columns() {
    assert_eq!(entries("knight"), bare(&[2, 8, 20, 40, 58, 92]));
    assert_eq!(
        entries("pedersen"),
        bare(&[40, 58, 92, 138, 198, 264, 344, 442, 554, 680, 800, 970, 1120, 1310, 1500])
    );
    assert_eq!(
        entries("brechignac"),
        bare(&[93, 134, 191, 262, 342, 442, 552, 695, 822, 902, 1025, 1297])
    );
}

#[test]
fn jellium_columns() {
    let paren = [20, 40, 196, 268, 356];
    let expected: Vec<_> = [
        2, 8, 18, 20, 34, 40, 58, 92, 134, 186, 196, 254, 268, 338, 356, 440, 562, 704, 852,
    ]
    .iter()
    .map(|&v| (v, 0, paren.contains(&v)))
    .collect();
    assert_eq!(entries("jellium-martin"), expected);
    assert_eq!(
        entries("jellium-bjornholm"),
        bare(&[2, 8, 18, 20, 34, 40, 58, 92, 138, 186, 196, 254, 338, 440, 556, 676, 832])
    );
    assert_eq!(
        entries("jellium-brack"),
        bare(&[
            2, 8, 20, 34, 58, 92, 138, 186, 254, 338, 438, 440, 542, 556, 676, 758, 832, 912, 1074,
            1100, 1284, 1502
        ])
    );
    assert_eq!(
        entries("jellium-bulgac"),
        bare(&[
            34, 58, 92, 138, 186, 254, 338, 440, 542, 556, 676, 748, 832, 912, 1074, 1100, 1284,
            1502
        ])
    );
}

#[test]
fn other_model_columns() {
    assert_eq!(
        entries("woods-saxon"),
        bare(&[
            2, 8, 20, 40, 58, 68, 92, 138, 198, 254, 268, 338, 440, 562, 694, 832, 1012, 1100,
            1216, 1314, 1516
        ])
    );
    assert_eq!(
        entries("three-n-plus-l"),
        bare(&[2, 8, 18, 34, 58, 90, 132, 186, 252, 332, 428, 540, 670, 820, 990, 1182, 1398])
    );
    assert_eq!(
        entries("intermediate-well"),
        bare(&[2, 8, 18, 20, 34, 40, 58, 68, 70, 92, 106, 112, 138, 156])
    );
    assert_eq!(
        entries("square-well"),
        bare(&[2, 8, 18, 20, 34, 40, 58, 68, 90, 92, 106, 132, 138, 156])
    );
    assert_eq!(
        entries("harmonic-oscillator"),
        bare(&[2, 8, 20, 40, 70, 112, 168])
    );
}

#[test]
fn q_oscillator_column_matches_model() {
    use qshell::{build_scheme, detect_shells, primary_counts, ModelParameters};
    let column = entries("q-oscillator");
    assert!(column.contains(&(18, 0, true)));
    let bare_values: Vec<u32> = column.iter().filter(|e| !e.2).map(|e| e.0).collect();
    let scheme = build_scheme(&ModelParameters::default(), 1500).unwrap();
    assert_eq!(
        primary_counts(&detect_shells(&scheme, 0.39, 0.30)),
        bare_values
    );
}
