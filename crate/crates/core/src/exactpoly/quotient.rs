//! Equitable partitions and quotient Q-matrices.

use crate::canon::refine_equitable;
use crate::error::PolyError;
use crate::families::{template_cells, FamilyId};
use crate::graph::Graph;

use super::matrix::MatrixZk;

/// Ordered list of disjoint vertex cells covering `V(G)`.
pub type Partition = Vec<Vec<usize>>;

/// Coarsest equitable partition refining `seed`, cells sorted internally
/// and ordered by their smallest vertex.
pub fn coarsest_equitable(g: &Graph, seed: &[Vec<usize>]) -> Partition {
    let mut cells: Partition = seed.iter().filter(|c| !c.is_empty()).cloned().collect();
    refine_equitable(g, &mut cells);
    for c in cells.iter_mut() {
        c.sort_unstable();
    }
    cells.sort_by_key(|c| c[0]);
    cells
}

/// The partition with one cell.
pub fn trivial_partition(g: &Graph) -> Partition {
    if g.n() == 0 {
        Vec::new()
    } else {
        vec![(0..g.n()).collect()]
    }
}

fn check_cover(g: &Graph, p: &[Vec<usize>]) -> Result<Vec<usize>, PolyError> {
    let mut cell_of = vec![usize::MAX; g.n()];
    for (i, cell) in p.iter().enumerate() {
        if cell.is_empty() {
            return Err(PolyError::BadPartition(format!("cell {i} is empty")));
        }
        for &v in cell {
            if v >= g.n() {
                return Err(PolyError::BadPartition(format!("vertex {v} out of range")));
            }
            if cell_of[v] != usize::MAX {
                return Err(PolyError::BadPartition(format!("vertex {v} appears twice")));
            }
            cell_of[v] = i;
        }
    }
    if let Some(v) = cell_of.iter().position(|&c| c == usize::MAX) {
        return Err(PolyError::BadPartition(format!(
            "vertex {v} is not covered"
        )));
    }
    Ok(cell_of)
}

/// Quotient of `Q = D + A` over an equitable partition: entry `(i, j)` is
/// the neighbour count of any cell-`i` vertex inside cell `j`, plus the
/// common degree on the diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    pub entries: Vec<Vec<i64>>,
}

impl QuotientMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn to_zk(&self) -> MatrixZk {
        MatrixZk::from_ints(&self.entries).expect("square by construction")
    }
}

pub fn quotient_q(g: &Graph, p: &[Vec<usize>]) -> Result<QuotientMatrix, PolyError> {
    let cell_of = check_cover(g, p)?;
    let c = p.len();
    let counts = |v: usize| -> Vec<usize> {
        let mut row = vec![0; c];
        for &u in g.neighbors(v) {
            row[cell_of[u]] += 1;
        }
        row
    };
    let mut entries = vec![vec![0i64; c]; c];
    for (i, cell) in p.iter().enumerate() {
        let first = counts(cell[0]);
        for &v in &cell[1..] {
            let row = counts(v);
            if let Some(j) = (0..c).find(|&j| row[j] != first[j]) {
                return Err(PolyError::NotEquitable {
                    cell_i: i,
                    cell_j: j,
                    v: cell[0],
                    count_v: first[j],
                    u: v,
                    count_u: row[j],
                });
            }
        }
        for j in 0..c {
            entries[i][j] = first[j] as i64;
        }
        entries[i][i] += g.degree(cell[0]) as i64;
    }
    Ok(QuotientMatrix { entries })
}

/// Families with a stored parameterized quotient template.
pub const TEMPLATE_FAMILIES: [FamilyId; 7] = [
    FamilyId::K1vKP2,
    FamilyId::K1vKP2P1,
    FamilyId::K1vS3P1,
    FamilyId::K1vS4P1,
    FamilyId::K1vKP2S4,
    FamilyId::K1vKP2S3,
    FamilyId::L2,
];

/// Smallest `k` at which every template cell is non-empty and the cells
/// form the coarsest equitable partition.
pub fn template_min_k(id: FamilyId) -> i64 {
    match id {
        FamilyId::K1vS3P1 | FamilyId::K1vS4P1 | FamilyId::K1vKP2S4 => 3,
        FamilyId::K1vKP2S3 | FamilyId::K1vKP2 | FamilyId::K1vKP2P1 | FamilyId::L2 => 2,
        _ => i64::MAX,
    }
}

/// Quotient template with entries affine in `k`; cells in the order of
/// [`template_cells`].
pub fn symbolic_quotient(id: FamilyId) -> Result<MatrixZk, PolyError> {
    let z = (0, 0);
    let c = |v: i64| (0, v);
    let rows: Vec<Vec<(i64, i64)>> = match id {
        FamilyId::K1vKP2 => vec![vec![(2, 0), (2, 0)], vec![c(1), c(3)]],
        FamilyId::K1vKP2P1 => vec![
            vec![(2, 1), (2, 0), c(1)],
            vec![c(1), c(3), z],
            vec![c(1), z, c(1)],
        ],
        // apex, matching, star leaves, star centre, isolated
        FamilyId::K1vS3P1 => vec![
            vec![(2, 0), (2, -4), c(2), c(1), c(1)],
            vec![c(1), c(3), z, z, z],
            vec![c(1), z, c(2), c(1), z],
            vec![c(1), z, c(2), c(3), z],
            vec![c(1), z, z, z, c(1)],
        ],
        FamilyId::K1vS4P1 => vec![
            vec![(2, 1), (2, -4), c(3), c(1), c(1)],
            vec![c(1), c(3), z, z, z],
            vec![c(1), z, c(2), c(1), z],
            vec![c(1), z, c(3), c(4), z],
            vec![c(1), z, z, z, c(1)],
        ],
        FamilyId::K1vKP2S4 => vec![
            vec![(2, 0), (2, -4), c(3), c(1)],
            vec![c(1), c(3), z, z],
            vec![c(1), z, c(2), c(1)],
            vec![c(1), z, c(3), c(4)],
        ],
        FamilyId::K1vKP2S3 => vec![
            vec![(2, 1), (2, -2), c(2), c(1)],
            vec![c(1), c(3), z, z],
            vec![c(1), z, c(2), c(1)],
            vec![c(1), z, c(2), c(3)],
        ],
        // apex, matching, u3, w'
        FamilyId::L2 => vec![
            vec![(2, 1), (2, 0), c(1), z],
            vec![c(1), c(3), z, z],
            vec![c(1), z, c(2), c(1)],
            vec![z, z, c(1), c(1)],
        ],
        _ => return Err(PolyError::NoTemplate(id.name().to_string())),
    };
    MatrixZk::from_affine(&rows)
}

/// The template's cells for the built graph at `k`.
pub fn template_partition(id: FamilyId, k: i64) -> Result<Partition, PolyError> {
    template_cells(id, k).ok_or_else(|| PolyError::NoTemplate(id.name().to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_family;
    use crate::graph::Primitive;
    use num_bigint::BigInt;

    #[test]
    fn refinement_examples() {
        let c6 = Primitive::Cycle(6).build().unwrap();
        assert_eq!(coarsest_equitable(&c6, &trivial_partition(&c6)).len(), 1);
        let s = Primitive::Star(5).build().unwrap();
        assert_eq!(
            coarsest_equitable(&s, &trivial_partition(&s)),
            vec![vec![0], vec![1, 2, 3, 4]]
        );
        let g = build_family(FamilyId::K1vKP2P1, 3).unwrap().graph;
        assert_eq!(
            coarsest_equitable(&g, &trivial_partition(&g)),
            vec![vec![0], vec![1, 2, 3, 4, 5, 6], vec![7]]
        );
    }

    #[test]
    fn quotient_examples() {
        let c4 = Primitive::Cycle(4).build().unwrap();
        assert_eq!(
            quotient_q(&c4, &trivial_partition(&c4)).unwrap().entries,
            vec![vec![4]]
        );
        let g = build_family(FamilyId::K1vKP2P1, 3).unwrap().graph;
        let q = quotient_q(&g, &template_partition(FamilyId::K1vKP2P1, 3).unwrap()).unwrap();
        assert_eq!(q.entries, vec![vec![7, 6, 1], vec![1, 3, 0], vec![1, 0, 1]]);
        let l2 = build_family(FamilyId::L2, 3).unwrap().graph;
        let q = quotient_q(&l2, &template_partition(FamilyId::L2, 3).unwrap()).unwrap();
        assert_eq!(
            q.entries,
            vec![
                vec![7, 6, 1, 0],
                vec![1, 3, 0, 0],
                vec![1, 0, 2, 1],
                vec![0, 0, 1, 1]
            ]
        );
    }

    #[test]
    fn non_equitable_is_rejected() {
        let p3 = Primitive::Path(3).build().unwrap();
        let err = quotient_q(&p3, &[vec![0, 1, 2]]).unwrap_err();
        assert_eq!(
            err,
            PolyError::NotEquitable {
                cell_i: 0,
                cell_j: 0,
                v: 0,
                count_v: 1,
                u: 1,
                count_u: 2
            }
        );
        assert!(matches!(
            quotient_q(&p3, &[vec![0, 1]]),
            Err(PolyError::BadPartition(_))
        ));
        assert!(matches!(
            quotient_q(&p3, &[vec![0, 1], vec![1, 2]]),
            Err(PolyError::BadPartition(_))
        ));
    }

    #[test]
    fn templates_match_concrete_quotients() {
        for id in TEMPLATE_FAMILIES {
            let t = symbolic_quotient(id).unwrap();
            for k in template_min_k(id)..=25 {
                let g = build_family(id, k).unwrap().graph;
                let cells = template_partition(id, k).unwrap();
                let concrete = quotient_q(&g, &cells).unwrap();
                let expect: Vec<Vec<BigInt>> = concrete
                    .entries
                    .iter()
                    .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                    .collect();
                assert_eq!(t.eval_at(k), expect, "{id} k={k}");
                let mut canon = coarsest_equitable(&g, &trivial_partition(&g));
                let mut mine = cells.clone();
                canon.sort();
                mine.sort();
                assert_eq!(canon, mine, "{id} k={k}");
            }
        }
        assert!(matches!(
            symbolic_quotient(FamilyId::L1),
            Err(PolyError::NoTemplate(_))
        ));
    }
}
