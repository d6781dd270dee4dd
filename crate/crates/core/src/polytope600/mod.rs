//! The 600-cell over `Q(sqrt 5)`, its decomposition into two solid tori, the boundary
//! torus of one of them, and the right-angled 120-cell reflection group in `H^4`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactalg::{QuadExtElem, QuadField};
use crate::scomplex::{flag_complex_with_overflow, is_flag_no_square, ComplexError, Graph, SComplex};

mod gram;
mod lattice;
mod torus;

pub use gram::{gamma4_generators, gram_p120, h4_reflection_matrices, verify_gamma4, H4Realization};
pub use lattice::{hnf_sublattices, lattice_quotient_torus, match_lattice_quotient, LatticeMatch};
pub use torus::{
    boundary_torus, core_decagons, core_decagons_from, decompose, decompose_from, neighbor_census, solid_torus, NeighborCensus,
    SolidTorus, TorusDecomposition,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error("invariant `{check}` failed: {found}")]
    Invariant { check: String, found: String },
    #[error("recurrence left the vertex set at step {0}")]
    LeftVertexSet(usize),
    #[error("({0}, {1}) is not an edge of the 600-cell")]
    NotAnEdge(usize, usize),
    #[error("interval enclosure of Gram entry ({0}, {1}) misses the exact value; raise the precision")]
    PrecisionTooLow(usize, usize),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

pub(crate) fn invariant(check: &str, found: impl std::fmt::Display) -> PolytopeError {
    PolytopeError::Invariant { check: check.into(), found: found.to_string() }
}

pub fn field5() -> QuadField {
    QuadField::new(5).expect("5 is square-free")
}

/// Golden ratio `(1 + sqrt 5) / 2`.
pub fn phi() -> QuadExtElem {
    field5().frac(1, 1, 2)
}

/// A point of the unit 3-sphere with coordinates in `Q(sqrt 5)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Vertex4 {
    pub coords: [QuadExtElem; 4],
}

impl Vertex4 {
    pub fn dot(&self, other: &Self) -> QuadExtElem {
        let mut acc = field5().zero();
        for i in 0..4 {
            acc = acc + &self.coords[i] * &other.coords[i];
        }
        acc
    }

    pub fn scale(&self, s: &QuadExtElem) -> Self {
        Self { coords: std::array::from_fn(|i| &self.coords[i] * s) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coords: std::array::from_fn(|i| &self.coords[i] - &other.coords[i]) }
    }

    pub fn to_f64(&self) -> [f64; 4] {
        std::array::from_fn(|i| self.coords[i].to_f64())
    }
}

/// The 600-cell: 120 vertices on the unit sphere, edges between vertices at inner
/// product `phi / 2`, and the flag complex of that graph.
#[derive(Clone, Debug)]
pub struct C600 {
    pub complex: SComplex,
    pub coordinates: Vec<Vertex4>,
    pub edge_dot: QuadExtElem,
    graph: Graph,
    index: BTreeMap<Vertex4, usize>,
}

impl C600 {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_index(&self, v: &Vertex4) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Lexicographically least edge.
    pub fn least_edge(&self) -> (usize, usize) {
        self.graph.edges()[0]
    }
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
                    if distinct && inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// The 120 vertices in lexicographic order of their exact coordinates.
pub fn vertices_600() -> Vec<Vertex4> {
    let f = field5();
    let zero = f.zero();
    let half = f.frac(1, 0, 2);
    let mut out = Vec::with_capacity(120);
    for i in 0..4 {
        for s in [1, -1] {
            let mut c: [QuadExtElem; 4] = std::array::from_fn(|_| zero.clone());
            c[i] = f.int(s);
            out.push(Vertex4 { coords: c });
        }
    }
    for mask in 0..16u32 {
        let c = std::array::from_fn(|i| if mask >> i & 1 == 1 { -&half } else { half.clone() });
        out.push(Vertex4 { coords: c });
    }
    // 1/2 (phi, 1, 1/phi, 0)
    let base = [f.frac(1, 1, 4), half.clone(), f.frac(-1, 1, 4), zero.clone()];
    for p in even_permutations() {
        for mask in 0..8u32 {
            let signed: [QuadExtElem; 3] =
                std::array::from_fn(|i| if mask >> i & 1 == 1 { -&base[i] } else { base[i].clone() });
            let mut c: [QuadExtElem; 4] = std::array::from_fn(|_| zero.clone());
            for slot in 0..3 {
                c[p[slot]] = signed[slot].clone();
            }
            out.push(Vertex4 { coords: c });
        }
    }
    out.sort();
    out
}

/// Builds the 600-cell and checks its invariants: unit vertices, f-vector
/// `(120, 720, 1200, 600)`, 12 edges and 20 tetrahedra at each vertex, 5 tetrahedra
/// around each edge, and the flag-no-square property.
pub fn build_600_cell() -> Result<C600, PolytopeError> {
    let coordinates = vertices_600();
    let one = field5().one();
    if let Some(i) = coordinates.iter().position(|v| v.dot(v) != one) {
        return Err(invariant("unit_norm", format!("vertex {i}")));
    }
    let n = coordinates.len();
    let edge_dot = phi().scale(&crate::exactalg::rat(1, 2));
    let mut graph = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if coordinates[i].dot(&coordinates[j]) == edge_dot {
                graph.add_edge(i, j)?;
            }
        }
    }
    let (complex, overflow) = flag_complex_with_overflow(&graph);
    if let Some(c) = overflow {
        return Err(ComplexError::CliqueTooLarge(c).into());
    }
    let index = coordinates.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let c = C600 { complex, coordinates, edge_dot, graph, index };
    check_census(&c)?;
    Ok(c)
}

/// Incidence counts of the 600-cell: per-vertex edge and tetrahedron degrees and
/// tetrahedra per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub f_vector: Vec<usize>,
    pub vertex_edge_degrees: BTreeMap<usize, usize>,
    pub vertex_tetra_degrees: BTreeMap<usize, usize>,
    pub tetra_per_edge: BTreeMap<usize, usize>,
}

pub fn census(k: &SComplex) -> Census {
    let mut vdeg: BTreeMap<usize, usize> = BTreeMap::new();
    let mut vtet: BTreeMap<usize, usize> = BTreeMap::new();
    let mut etet: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in k.simplices(1) {
        *vdeg.entry(e[0]).or_default() += 1;
        *vdeg.entry(e[1]).or_default() += 1;
        etet.insert((e[0], e[1]), 0);
    }
    for t in k.simplices(3) {
        for i in 0..4 {
            *vtet.entry(t[i]).or_default() += 1;
            for j in i + 1..4 {
                *etet.get_mut(&(t[i], t[j])).unwrap() += 1;
            }
        }
    }
    let hist = |vals: Vec<usize>| {
        let mut h = BTreeMap::new();
        vals.into_iter().for_each(|x| *h.entry(x).or_default() += 1);
        h
    };
    let per_vertex = |m: &BTreeMap<usize, usize>| k.vertices().iter().map(|v| m.get(v).copied().unwrap_or(0)).collect();
    Census {
        f_vector: k.f_vector(),
        vertex_edge_degrees: hist(per_vertex(&vdeg)),
        vertex_tetra_degrees: hist(per_vertex(&vtet)),
        tetra_per_edge: hist(etet.into_values().collect()),
    }
}

fn check_census(c: &C600) -> Result<(), PolytopeError> {
    let cs = census(&c.complex);
    if cs.f_vector != [120, 720, 1200, 600] {
        return Err(invariant("f_vector", format!("{:?}", cs.f_vector)));
    }
    if cs.vertex_edge_degrees != BTreeMap::from([(12, 120)]) {
        return Err(invariant("vertex_edge_degree", format!("{:?}", cs.vertex_edge_degrees)));
    }
    if cs.vertex_tetra_degrees != BTreeMap::from([(20, 120)]) {
        return Err(invariant("vertex_tetra_degree", format!("{:?}", cs.vertex_tetra_degrees)));
    }
    if cs.tetra_per_edge != BTreeMap::from([(5, 720)]) {
        return Err(invariant("tetra_per_edge", format!("{:?}", cs.tetra_per_edge)));
    }
    let fns = is_flag_no_square(&c.complex);
    if !fns.holds() {
        return Err(invariant("flag_no_square", format!("{fns:?}")));
    }
    Ok(())
}
