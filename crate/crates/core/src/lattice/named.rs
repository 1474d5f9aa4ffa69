//! Small named lattices used as fixtures.

use super::FiniteLattice;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `0 < 1 < … < n-1`, labelled by index.
pub fn chain(n: usize) -> FiniteLattice {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    FiniteLattice::from_covers(names, &covers).expect("chains are lattices")
}

/// `M_k`: bottom `0`, atoms `a1..ak`, top `1`. `m_n(2)` is the square `M2`.
pub fn m_n(k: usize) -> FiniteLattice {
    let mut names = vec!["0".to_string()];
    names.extend((1..=k).map(|i| format!("a{i}")));
    names.push("1".to_string());
    let top = k + 1;
    let mut covers = Vec::new();
    for i in 1..=k {
        covers.push((0, i));
        covers.push((i, top));
    }
    if k == 0 {
        covers.push((0, 1));
    }
    FiniteLattice::from_covers(names, &covers).expect("M_k is a lattice")
}

/// The pentagon `0 < a < b < 1`, `0 < c < 1`.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(
        labels(&["0", "a", "b", "c", "1"]),
        &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)],
    )
    .expect("N5 is a lattice")
}

/// Two 2-chains `a1 < b1`, `a2 < b2` glued at common bounds.
pub fn n6() -> FiniteLattice {
    FiniteLattice::from_covers(
        labels(&["0", "a1", "b1", "a2", "b2", "1"]),
        &[(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)],
    )
    .expect("N6 is a lattice")
}

/// `(a1, b1, a2, b2)` of [`n6`].
pub fn n6_quadruple(l: &FiniteLattice) -> (usize, usize, usize, usize) {
    let ix = |s| l.index_of(s).expect("N6 label");
    (ix("a1"), ix("b1"), ix("a2"), ix("b2"))
}

/// The two-atom Boolean lattice cubed: `2^3`.
pub fn boolean_cube() -> FiniteLattice {
    let names: Vec<String> = (0..8).map(|i| format!("{i:03b}")).collect();
    let mut covers = Vec::new();
    for x in 0..8usize {
        for bit in 0..3 {
            if x & (1 << bit) == 0 {
                covers.push((x, x | (1 << bit)));
            }
        }
    }
    FiniteLattice::from_covers(names, &covers).expect("2^3 is a lattice")
}

/// Small non-construction lattices exercised across the test suites.
pub fn fixtures() -> Vec<FiniteLattice> {
    vec![
        chain(1),
        chain(2),
        chain(3),
        chain(5),
        m_n(2),
        m_n(3),
        m_n(4),
        n5(),
        n6(),
        boolean_cube(),
    ]
}
