//! Small hand-built complexes with known automorphism groups.

use dcx_core::{ExchangePair, FlagComplex, VertexId};

/// The complete graph on `n` vertices `v0..v{n-1}`: a single simplex.
pub fn complete(n: usize) -> FlagComplex {
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    FlagComplex::from_indexed(labels, edges).expect("valid graph")
}

/// A path of `m` spine vertices `s{k}`, each carrying two leaves `a{k}`,
/// `b{k}`. Vertex `3k` is the spine, `3k+1`, `3k+2` the leaves.
pub fn line_of_edges(m: usize) -> FlagComplex {
    let mut labels = Vec::with_capacity(3 * m);
    for k in 0..m {
        labels.extend([format!("s{k}"), format!("a{k}"), format!("b{k}")]);
    }
    let mut edges = Vec::new();
    for k in 0..m {
        edges.push((3 * k, 3 * k + 1));
        edges.push((3 * k, 3 * k + 2));
        if k + 1 < m {
            edges.push((3 * k, 3 * k + 3));
        }
    }
    FlagComplex::from_indexed(labels, edges).expect("valid graph")
}

/// The leaf pairs `{a_k, b_k}` of [`line_of_edges`].
pub fn column_pairs(m: usize) -> Vec<ExchangePair> {
    (0..m)
        .map(|k| ExchangePair::new(VertexId((3 * k + 1) as u32), VertexId((3 * k + 2) as u32)).unwrap())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        assert_eq!(complete(5).edge_count(), 10);
        let k = line_of_edges(4);
        assert_eq!(k.len(), 12);
        assert_eq!(k.edge_count(), 4 * 2 + 3);
        assert_eq!(k.label(VertexId(4)), "a1");
        assert_eq!(column_pairs(2)[1].as_array(), [4, 5]);
    }
}
