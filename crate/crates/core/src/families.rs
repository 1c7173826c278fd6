//! Parameterized extremal families and proof gadgets.
//!
//! Most families are cones `K_1 ∨ H` where `H` is a matching of `P_2`
//! copies plus a few small components. Vertex 0 is always the apex `w`;
//! the `P_2` block comes next, then the remaining components in the order
//! of the family name, each with its centre (for stars) first.
//!
//! `L1`..`L5` are the near-cone graphs with one vertex `w'` outside the
//! apex neighbourhood.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FamilyError;
use crate::graph::{cone, disjoint_union, structural_profile, Graph, Primitive};

/// Edge count of a family instance as `3k + residue`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Residue {
    Zero,
    One,
    Two,
}

impl Residue {
    pub fn offset(self) -> i64 {
        match self {
            Residue::Zero => 0,
            Residue::One => 1,
            Residue::Two => 2,
        }
    }

    pub fn of(m: i64) -> (Residue, i64) {
        let k = m.div_euclid(3);
        let r = match m.rem_euclid(3) {
            0 => Residue::Zero,
            1 => Residue::One,
            _ => Residue::Two,
        };
        (r, k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyId {
    /// `K_1 ∨ kP_2`
    K1vKP2,
    /// `K_1 ∨ ((k-2)P_2 ∪ S_4)`
    K1vKP2S4,
    /// `K_1 ∨ ((k-1)P_2 ∪ S_3)`
    K1vKP2S3,
    /// `K_1 ∨ (kP_2 ∪ P_1)`
    K1vKP2P1,
    /// `K_1 ∨ ((k-2)P_2 ∪ S_3 ∪ P_1)`
    K1vS3P1,
    /// `K_1 ∨ ((k-2)P_2 ∪ S_4 ∪ P_1)`
    K1vS4P1,
    /// `K_1 ∨ ((k-3)P_2 ∪ 2S_3 ∪ P_1)`
    K1v2S3P1,
    /// `K_1 ∨ ((k-2)P_2 ∪ P_4 ∪ P_1)`
    K1vP4P1,
    /// `K_1 ∨ ((k-3)P_2 ∪ S_5)`
    K1vS5,
    /// `K_1 ∨ ((k-3)P_2 ∪ S_6)`
    K1vS6,
    /// `K_1 ∨ ((k-4)P_2 ∪ S_7 ∪ P_1)`
    K1vS7P1,
    /// `K_1 ∨ ((k-3)P_2 ∪ S_5 ∪ P_1)`
    K1vS5P1,
    /// `K_1 ∨ ((k-4)P_2 ∪ S_6 ∪ P_1)`
    K1vS6P1,
    /// `K_1 ∨ ((k-2)P_2 ∪ C_3)`
    K1vC3,
    /// `K_1 ∨ ((k-2)P_2 ∪ C_3 ∪ P_1)`
    K1vC3P1,
    /// `K_1 ∨ ((k-2)P_2 ∪ C_4)`
    K1vC4,
    /// `K_1 ∨ ((k-3)P_2 ∪ C_4 ∪ P_1)`
    K1vC4P1,
    /// `K_1 ∨ ((k-3)P_2 ∪ C_3 ∪ S_3)`
    K1vC3S3,
    /// `K_1 ∨ ((k-4)P_2 ∪ S_3 ∪ C_3 ∪ P_1)`
    K1vS3C3P1,
    L1,
    L2,
    L3,
    L4,
    L5,
}

pub const ALL_FAMILIES: [FamilyId; 24] = [
    FamilyId::K1vKP2,
    FamilyId::K1vKP2S4,
    FamilyId::K1vKP2S3,
    FamilyId::K1vKP2P1,
    FamilyId::K1vS3P1,
    FamilyId::K1vS4P1,
    FamilyId::K1v2S3P1,
    FamilyId::K1vP4P1,
    FamilyId::K1vS5,
    FamilyId::K1vS6,
    FamilyId::K1vS7P1,
    FamilyId::K1vS5P1,
    FamilyId::K1vS6P1,
    FamilyId::K1vC3,
    FamilyId::K1vC3P1,
    FamilyId::K1vC4,
    FamilyId::K1vC4P1,
    FamilyId::K1vC3S3,
    FamilyId::K1vS3C3P1,
    FamilyId::L1,
    FamilyId::L2,
    FamilyId::L3,
    FamilyId::L4,
    FamilyId::L5,
];

// Extra components of a cone family besides the P2 matching.
#[derive(Clone, Copy)]
enum Part {
    Star(usize),
    Path(usize),
    Cycle(usize),
    Isolated,
}

struct ConeSpec {
    // number of P2 copies is k - p2_deficit
    p2_deficit: i64,
    parts: &'static [Part],
}

impl FamilyId {
    /// Stable display name used by the CLI and in certificates.
    pub fn name(self) -> &'static str {
        use FamilyId::*;
        match self {
            K1vKP2 => "K1v(kP2)",
            K1vKP2S4 => "K1v(P2s+S4)",
            K1vKP2S3 => "K1v(P2s+S3)",
            K1vKP2P1 => "K1v(kP2+P1)",
            K1vS3P1 => "K1v(S3+P1)",
            K1vS4P1 => "K1v(S4+P1)",
            K1v2S3P1 => "K1v(2S3+P1)",
            K1vP4P1 => "K1v(P4+P1)",
            K1vS5 => "K1v(S5)",
            K1vS6 => "K1v(S6)",
            K1vS7P1 => "K1v(S7+P1)",
            K1vS5P1 => "K1v(S5+P1)",
            K1vS6P1 => "K1v(S6+P1)",
            K1vC3 => "K1v(C3)",
            K1vC3P1 => "K1v(C3+P1)",
            K1vC4 => "K1v(C4)",
            K1vC4P1 => "K1v(C4+P1)",
            K1vC3S3 => "K1v(C3+S3)",
            K1vS3C3P1 => "K1v(S3+C3+P1)",
            L1 => "L1",
            L2 => "L2",
            L3 => "L3",
            L4 => "L4",
            L5 => "L5",
        }
    }

    /// The graph written out with the multiplicities in terms of `k`.
    pub fn formula(self) -> &'static str {
        use FamilyId::*;
        match self {
            K1vKP2 => "K1 v kP2",
            K1vKP2S4 => "K1 v ((k-2)P2 u S4)",
            K1vKP2S3 => "K1 v ((k-1)P2 u S3)",
            K1vKP2P1 => "K1 v (kP2 u P1)",
            K1vS3P1 => "K1 v ((k-2)P2 u S3 u P1)",
            K1vS4P1 => "K1 v ((k-2)P2 u S4 u P1)",
            K1v2S3P1 => "K1 v ((k-3)P2 u 2S3 u P1)",
            K1vP4P1 => "K1 v ((k-2)P2 u P4 u P1)",
            K1vS5 => "K1 v ((k-3)P2 u S5)",
            K1vS6 => "K1 v ((k-3)P2 u S6)",
            K1vS7P1 => "K1 v ((k-4)P2 u S7 u P1)",
            K1vS5P1 => "K1 v ((k-3)P2 u S5 u P1)",
            K1vS6P1 => "K1 v ((k-4)P2 u S6 u P1)",
            K1vC3 => "K1 v ((k-2)P2 u C3)",
            K1vC3P1 => "K1 v ((k-2)P2 u C3 u P1)",
            K1vC4 => "K1 v ((k-2)P2 u C4)",
            K1vC4P1 => "K1 v ((k-3)P2 u C4 u P1)",
            K1vC3S3 => "K1 v ((k-3)P2 u C3 u S3)",
            K1vS3C3P1 => "K1 v ((k-4)P2 u S3 u C3 u P1)",
            L1 => "L1: apex over (k-1)P2 u {u1,u2,u3}, w' ~ u2,u3",
            L2 => "L2: apex over kP2 u {u3}, w' ~ u3",
            L3 => "L3: apex over (k-1)P2 u {u1,u2}, w' ~ u1,u2",
            L4 => "L4: apex over (k-3)P2 u {u1,u2} u S3 u P1, w' ~ u1,u2",
            L5 => "L5: apex over (k-2)P2 u {u1,u2,u3} u P1, w' ~ u1,u2,u3",
        }
    }

    fn cone_spec(self) -> Option<ConeSpec> {
        use FamilyId::*;
        use Part::*;
        let (p2_deficit, parts): (i64, &'static [Part]) = match self {
            K1vKP2 => (0, &[]),
            K1vKP2S4 => (2, &[Star(4)]),
            K1vKP2S3 => (1, &[Star(3)]),
            K1vKP2P1 => (0, &[Isolated]),
            K1vS3P1 => (2, &[Star(3), Isolated]),
            K1vS4P1 => (2, &[Star(4), Isolated]),
            K1v2S3P1 => (3, &[Star(3), Star(3), Isolated]),
            K1vP4P1 => (2, &[Path(4), Isolated]),
            K1vS5 => (3, &[Star(5)]),
            K1vS6 => (3, &[Star(6)]),
            K1vS7P1 => (4, &[Star(7), Isolated]),
            K1vS5P1 => (3, &[Star(5), Isolated]),
            K1vS6P1 => (4, &[Star(6), Isolated]),
            K1vC3 => (2, &[Cycle(3)]),
            K1vC3P1 => (2, &[Cycle(3), Isolated]),
            K1vC4 => (2, &[Cycle(4)]),
            K1vC4P1 => (3, &[Cycle(4), Isolated]),
            K1vC3S3 => (3, &[Cycle(3), Star(3)]),
            K1vS3C3P1 => (4, &[Star(3), Cycle(3), Isolated]),
            L1 | L2 | L3 | L4 | L5 => return None,
        };
        Some(ConeSpec { p2_deficit, parts })
    }

    /// Smallest admissible `k`: every multiplicity nonnegative and every
    /// component well formed.
    pub fn min_k(self) -> i64 {
        use FamilyId::*;
        match self {
            L1 | L2 | L3 | L5 => 2,
            L4 => 3,
            K1vKP2 | K1vKP2P1 => 1,
            _ => self.cone_spec().map_or(1, |s| s.p2_deficit.max(1)),
        }
    }

    pub fn residue(self) -> Residue {
        use FamilyId::*;
        match self {
            K1vKP2 | K1vS3P1 | K1vS5 | K1vS6P1 | K1vC3 | K1vC4P1 | K1vS3C3P1 => Residue::Zero,
            K1vKP2S4 | K1vKP2P1 | K1vS5P1 | K1vC3P1 | L3 | L4 | L5 => Residue::One,
            K1vKP2S3 | K1vS4P1 | K1v2S3P1 | K1vP4P1 | K1vS6 | K1vS7P1 | K1vC4 | K1vC3S3 | L1
            | L2 => Residue::Two,
        }
    }

    pub fn expected_m(self, k: i64) -> i64 {
        3 * k + self.residue().offset()
    }

    /// Degree of the apex `w`, which is the maximum degree for every admissible `k`.
    pub fn expected_delta(self, k: i64) -> i64 {
        use FamilyId::*;
        match self {
            L1 | L2 => 2 * k + 1,
            L3 | L4 | L5 => 2 * k,
            _ => {
                let spec = self.cone_spec().expect("cone family");
                let others: i64 = spec.parts.iter().map(|p| p.order() as i64).sum();
                2 * (k - spec.p2_deficit) + others
            }
        }
    }

    /// Families characterized by the no-pendant (leaf-free) extremal result.
    pub fn is_leaf_free_family(self) -> bool {
        matches!(
            self,
            FamilyId::K1vKP2 | FamilyId::K1vKP2S4 | FamilyId::K1vKP2S3
        )
    }

    /// Families whose maximum degree meets `⌊(2m+1)/3⌋`.
    pub fn attains_delta_bound(self) -> bool {
        use FamilyId::*;
        matches!(
            self,
            K1vKP2 | K1vS3P1 | K1vKP2P1 | L1 | L2 | K1vKP2S3 | K1vS4P1 | K1vP4P1 | K1v2S3P1
        )
    }

    pub fn build(self, k: i64) -> Result<FamilyInstance, FamilyError> {
        build_family(self, k)
    }
}

impl Part {
    fn order(self) -> usize {
        match self {
            Part::Star(n) | Part::Path(n) | Part::Cycle(n) => n,
            Part::Isolated => 1,
        }
    }

    fn graph(self) -> Graph {
        let p = match self {
            Part::Star(n) => Primitive::Star(n),
            Part::Path(n) => Primitive::Path(n),
            Part::Cycle(n) => Primitive::Cycle(n),
            Part::Isolated => Primitive::Edgeless(1),
        };
        p.build().expect("static component parameters are valid")
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyId {
    type Err = FamilyError;

    /// Accepts the display name or the enum tag, ignoring case and spaces.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = |t: &str| -> String {
            t.chars()
                .filter(|c| !c.is_whitespace())
                .collect::<String>()
                .to_ascii_lowercase()
        };
        let want = norm(s);
        ALL_FAMILIES
            .iter()
            .copied()
            .find(|id| norm(id.name()) == want || norm(&format!("{id:?}")) == want)
            .ok_or_else(|| FamilyError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyInstance {
    pub id: FamilyId,
    pub k: i64,
    pub graph: Graph,
    pub expected_m: i64,
    pub expected_delta: i64,
}

pub fn build_family(id: FamilyId, k: i64) -> Result<FamilyInstance, FamilyError> {
    if k < id.min_k() {
        return Err(FamilyError::KBelowMinimum {
            family: id.name().to_string(),
            min_k: id.min_k(),
            k,
        });
    }
    let graph = match id.cone_spec() {
        Some(spec) => {
            let p2 = (k - spec.p2_deficit) as usize;
            let mut blocks = vec![Primitive::Path(2).build()?];
            let mut mult = vec![p2];
            for part in spec.parts {
                blocks.push(part.graph());
                mult.push(1);
            }
            cone(&disjoint_union(&blocks, &mult)?)
        }
        None => build_l(id, k as usize)?,
    };
    Ok(FamilyInstance {
        id,
        k,
        graph,
        expected_m: id.expected_m(k),
        expected_delta: id.expected_delta(k),
    })
}

/// Apex-adjacent `P_2` pairs occupying ids `1..=2*pairs`.
fn apex_pairs(pairs: usize) -> Vec<(usize, usize)> {
    (0..pairs).map(|i| (2 * i + 1, 2 * i + 2)).collect()
}

fn build_l(id: FamilyId, k: usize) -> Result<Graph, FamilyError> {
    // Layout: w = 0, matched pairs, named vertices, then w' last.
    let (pairs, named, extra): (usize, usize, Vec<(usize, usize)>) = match id {
        FamilyId::L1 => {
            // u1 (pendant), u2, u3 ; w' ~ u2, u3
            let b = 2 * (k - 1);
            let wp = b + 4;
            (k - 1, 3, vec![(b + 2, wp), (b + 3, wp)])
        }
        FamilyId::L2 => {
            let b = 2 * k;
            (k, 1, vec![(b + 1, b + 2)])
        }
        FamilyId::L3 => {
            let b = 2 * (k - 1);
            let wp = b + 3;
            (k - 1, 2, vec![(b + 1, wp), (b + 2, wp)])
        }
        FamilyId::L4 => {
            // u1, u2 ~ w' ; u3 centre with u4, u5 ; pendant p
            let b = 2 * (k - 3);
            let wp = b + 7;
            (
                k - 3,
                6,
                vec![(b + 1, wp), (b + 2, wp), (b + 3, b + 4), (b + 3, b + 5)],
            )
        }
        FamilyId::L5 => {
            // u1, u2, u3 ~ w' ; pendant p
            let b = 2 * (k - 2);
            let wp = b + 5;
            (k - 2, 4, vec![(b + 1, wp), (b + 2, wp), (b + 3, wp)])
        }
        _ => unreachable!("cone families are built elsewhere"),
    };
    let apex_nbrs = 2 * pairs + named;
    let n = apex_nbrs + 2;
    let edges = (1..=apex_nbrs)
        .map(|v| (0, v))
        .chain(apex_pairs(pairs))
        .chain(extra);
    Ok(Graph::from_edges(n, edges)?)
}

/// Orbit cells of the families that carry a symbolic quotient template,
/// in template row order. Returns `None` for other families.
pub fn template_cells(id: FamilyId, k: i64) -> Option<Vec<Vec<usize>>> {
    use FamilyId::*;
    let k = k as usize;
    let range = |a: usize, b: usize| (a..b).collect::<Vec<_>>();
    let cells = match id {
        K1vKP2 => vec![vec![0], range(1, 2 * k + 1)],
        K1vKP2P1 => vec![vec![0], range(1, 2 * k + 1), vec![2 * k + 1]],
        // apex, matching, star leaves, star centre[, P1]
        K1vS3P1 | K1vS4P1 | K1vKP2S4 | K1vKP2S3 => {
            let (pairs, star) = match id {
                K1vS3P1 => (k - 2, 3),
                K1vS4P1 | K1vKP2S4 => (k - 2, 4),
                _ => (k - 1, 3),
            };
            let c = 2 * pairs + 1;
            let mut cells = vec![vec![0], range(1, c), range(c + 1, c + star), vec![c]];
            if matches!(id, K1vS3P1 | K1vS4P1) {
                cells.push(vec![c + star]);
            }
            cells
        }
        L2 => vec![
            vec![0],
            range(1, 2 * k + 1),
            vec![2 * k + 1],
            vec![2 * k + 2],
        ],
        _ => return None,
    };
    Some(cells)
}

/// Residue-class prediction of the extremal family for size `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub family: FamilyId,
    pub k: i64,
    /// Set when `m` is below the size for which the prediction is proven.
    pub warning: Option<String>,
}

/// Smallest size for which the two-leaves-free extremal characterization holds.
pub const PREDICTION_MIN_M: i64 = 17;

pub fn predicted_extremal(m: i64) -> Prediction {
    let (r, k) = Residue::of(m);
    let family = match r {
        Residue::Zero => FamilyId::K1vS3P1,
        Residue::One => FamilyId::K1vKP2P1,
        Residue::Two => FamilyId::K1vS4P1,
    };
    let warning = (m < PREDICTION_MIN_M).then(|| {
        format!("size m = {m} is below {PREDICTION_MIN_M}; the prediction is unproven here")
    });
    Prediction { family, k, warning }
}

/// `(rational + √radicand) / denominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSurd {
    pub rational: i64,
    pub radicand: i64,
    pub denominator: i64,
}

impl QuadraticSurd {
    pub fn value(&self) -> f64 {
        (self.rational as f64 + (self.radicand as f64).sqrt()) / self.denominator as f64
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}+√{})/{}",
            self.rational, self.radicand, self.denominator
        )
    }
}

/// Closed-form Q-index where one is known, `None` otherwise.
pub fn closed_form_q(id: FamilyId, k: i64) -> Result<Option<QuadraticSurd>, FamilyError> {
    if k < id.min_k() {
        return Err(FamilyError::KBelowMinimum {
            family: id.name().to_string(),
            min_k: id.min_k(),
            k,
        });
    }
    Ok(match id {
        FamilyId::K1vKP2P1 => Some(QuadraticSurd {
            rational: 2 * k + 3,
            radicand: 4 * k * k + 4 * k + 9,
            denominator: 2,
        }),
        FamilyId::K1vKP2 => Some(QuadraticSurd {
            rational: 2 * k + 3,
            radicand: 4 * k * k - 4 * k + 9,
            denominator: 2,
        }),
        _ => None,
    })
}

/// Families listed as attaining `Δ = ⌊(2m+1)/3⌋` for size `m`, at `k = ⌊m/3⌋`.
///
/// For `m = 3k` the list names `K_1 ∨ (kP_2 ∪ P_1)`, whose size is `3k+1`;
/// the case analysis instead produces `K_1 ∨ kP_2`. The list is kept as
/// stated and the mismatch surfaces when it is compared with search results.
pub fn delta_equality_catalog(m: i64) -> (i64, Vec<FamilyId>) {
    use FamilyId::*;
    let (r, k) = Residue::of(m);
    let list = match r {
        Residue::Zero => vec![K1vKP2P1, K1vS3P1],
        Residue::One => vec![K1vKP2P1],
        Residue::Two => vec![L1, L2, K1vKP2S3, K1vS4P1, K1vP4P1, K1v2S3P1],
    };
    (k, list)
}

/// Checks an instance against its declared invariants.
pub fn check_instance(inst: &FamilyInstance) -> Result<(), String> {
    let g = &inst.graph;
    let prof = structural_profile(g);
    if g.m() as i64 != inst.expected_m {
        return Err(format!(
            "{}: m = {}, expected {}",
            inst.id,
            g.m(),
            inst.expected_m
        ));
    }
    if prof.max_degree as i64 != inst.expected_delta {
        return Err(format!(
            "{}: Δ = {}, expected {}",
            inst.id, prof.max_degree, inst.expected_delta
        ));
    }
    if prof.pendant_count > 1 {
        return Err(format!(
            "{}: {} pendant vertices",
            inst.id, prof.pendant_count
        ));
    }
    if inst.id.is_leaf_free_family() && prof.pendant_count != 0 {
        return Err(format!("{}: expected no pendant vertex", inst.id));
    }
    Ok(())
}
