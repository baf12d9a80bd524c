//! Golden comparison against the published τ = 0.038 level table.

use qshell::{
    build_scheme, detect_shells, primary_counts, render_table, MagicGrade, ModelParameters,
};

const TABLE: &str = include_str!("fixtures/table1.txt");

enum Row {
    Level {
        n: u32,
        l: u32,
        energy: String,
        degeneracy: u32,
        total: u32,
        magic: bool,
    },
    Gap(String),
}

fn rows() -> Vec<Row> {
    TABLE
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split_whitespace().collect();
            if f[0] == "gap" {
                return Row::Gap(f[1].to_string());
            }
            let magic = f[4].ends_with('*');
            Row::Level {
                n: f[0].parse().unwrap(),
                l: f[1].parse().unwrap(),
                energy: f[2].to_string(),
                degeneracy: f[3].parse().unwrap(),
                total: f[4].trim_end_matches('*').parse().unwrap(),
                magic,
            }
        })
        .collect()
}

#[test]
fn every_printed_level_is_reproduced() {
    let scheme = build_scheme(&ModelParameters::default(), 1410).unwrap();
    let levels: Vec<_> = rows()
        .into_iter()
        .filter_map(|r| match r {
            Row::Level {
                n,
                l,
                energy,
                degeneracy,
                total,
                ..
            } => Some((n, l, energy, degeneracy, total)),
            Row::Gap(_) => None,
        })
        .collect();
    assert_eq!(levels.len(), scheme.len());
    for (i, (n, l, energy, degeneracy, total)) in levels.into_iter().enumerate() {
        let level = scheme.levels()[i];
        assert_eq!((level.n, level.l), (n, l), "row {i}");
        assert_eq!(format!("{:.3}", level.energy), energy, "E({n},{l})");
        assert_eq!(level.degeneracy, degeneracy);
        assert_eq!(scheme.cumulative()[i], total);
    }
}

#[test]
fn rendered_table_matches_published_layout() {
    let scheme = build_scheme(&ModelParameters::default(), 1410).unwrap();
    let records = detect_shells(&scheme, 0.39, 0.30);
    let rendered = render_table(&scheme, &records);

    let mut expected = String::from("  n   l         E   2(2l+1)   total\n");
    for row in rows() {
        match row {
            Row::Level {
                n,
                l,
                energy,
                degeneracy,
                total,
                magic,
            } => expected.push_str(&format!(
                "{n:>3} {l:>3} {energy:>9} {degeneracy:>9} {total:>7}{}\n",
                if magic { "*" } else { "" }
            )),
            Row::Gap(g) => expected.push_str(&format!("{g:>17}\n")),
        }
    }
    // the published table stops before the gap above 1410
    assert!(rendered.starts_with(&expected), "rendered:\n{rendered}");
    assert_eq!(rendered[expected.len()..].trim(), "0.475");
}

#[test]
fn printed_gaps_in_order() {
    let printed: Vec<String> = rows()
        .into_iter()
        .filter_map(|r| match r {
            Row::Gap(g) => Some(g),
            Row::Level { .. } => None,
        })
        .collect();
    let scheme = build_scheme(&ModelParameters::default(), 1500).unwrap();
    let gaps: Vec<String> = detect_shells(&scheme, 0.39, 0.30)
        .iter()
        .filter(|r| r.grade == MagicGrade::Primary)
        .map(|r| format!("{:.3}", r.gap))
        .collect();
    assert_eq!(printed.len(), 23);
    assert_eq!(gaps[..23], printed[..]);
}

#[test]
fn magic_numbers_up_to_the_validity_limit() {
    let magic: Vec<u32> = rows()
        .into_iter()
        .filter_map(|r| match r {
            Row::Level {
                total, magic: true, ..
            } => Some(total),
            _ => None,
        })
        .collect();
    let scheme = build_scheme(&ModelParameters::default(), 1500).unwrap();
    let computed = primary_counts(&detect_shells(&scheme, 0.39, 0.30));
    assert_eq!(computed[..24], magic[..]);
    assert_eq!(computed[24..], [1502]);

    // stopping exactly at 1502 still sees the gap above it
    let scheme = build_scheme(&ModelParameters::default(), 1502).unwrap();
    assert_eq!(
        primary_counts(&detect_shells(&scheme, 0.39, 0.30)).last(),
        Some(&1502)
    );
}

#[test]
fn secondary_closures() {
    let scheme = build_scheme(&ModelParameters::default(), 1500).unwrap();
    let secondary: Vec<(u32, String)> = detect_shells(&scheme, 0.39, 0.30)
        .iter()
        .filter(|r| r.grade == MagicGrade::Secondary)
        .map(|r| (r.count, format!("{:.3}", r.gap)))
        .collect();
    assert!(secondary.contains(&(186, "0.329".into())));
    assert!(secondary.contains(&(542, "0.325".into())));
    // 18 sits below both thresholds
    assert!(secondary.iter().all(|(c, _)| *c != 18));
}
