//! The basis ordering is part of the public contract: CSV output, reduced
//! density matrices and the docs all index states this way.

use superfock::fock::enumerate_basis;
use superfock::ModeConfig;

const GOLDEN: &str = include_str!("golden/basis_ordering.txt");

fn render(f: usize, b: usize, cutoff: usize) -> String {
    let config = ModeConfig::new(f, b, cutoff, vec![1.0; f], 1).unwrap();
    let mut out = format!("config F={f} B={b} cutoff={cutoff}\n");
    for (i, state) in enumerate_basis(&config).iter().enumerate() {
        let fermions: String = state.fermion_occ.iter().map(|n| n.to_string()).collect();
        let bosons: Vec<String> = state.boson_occ.iter().map(|n| n.to_string()).collect();
        out.push_str(&format!("{i} {fermions} {}\n", bosons.join(",")));
        assert_eq!(config.index_of(state), Some(i));
    }
    out
}

#[test]
fn basis_ordering_matches_golden_file() {
    let blocks: Vec<&str> = GOLDEN
        .split("\n\n")
        .map(str::trim)
        .filter(|b| b.starts_with("config"))
        .collect();
    let expected = [(1, 1, 2), (2, 2, 1), (2, 1, 2)];
    assert_eq!(blocks.len(), expected.len());
    for (block, (f, b, cutoff)) in blocks.iter().zip(expected) {
        assert_eq!(render(f, b, cutoff).trim(), *block);
    }
}
