//! Hexagonal torus with 3-coloured plaquettes, the triangular torus of the
//! Hamiltonian family, and the superlattices used by the automorphism code.
//!
//! Plaquettes of the hexagonal lattice are the sites `(i, j)` of a triangular
//! lattice with colour `(i - j) mod 3`. Honeycomb vertices are the triangles
//! of that lattice and honeycomb edges are dual to its edges. The torus is
//! periodic in the colour lattice spanned by `b1 = (2,-1)` and `b2 = (1,1)`;
//! unit cell `(u, v)` holds the three plaquettes `u·b1 + v·b2 + (k, 0)`,
//! `k = 0, 1, 2`, each of colour `k`.

use serde::Serialize;

use crate::error::{Error, Result};

/// Site on the triangular lattice of plaquettes.
pub type Site = (i64, i64);

pub const B1: Site = (2, -1);
pub const B2: Site = (1, 1);

/// Counter-clockwise neighbour directions around a plaquette.
pub const DIRS: [Site; 6] = [(1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1)];

fn add(a: Site, b: Site) -> Site {
    (a.0 + b.0, a.1 + b.1)
}

fn sub(a: Site, b: Site) -> Site {
    (a.0 - b.0, a.1 - b.1)
}

pub fn site_color(s: Site) -> usize {
    (s.0 - s.1).rem_euclid(3) as usize
}

/// Cartesian position of a triangular-lattice point.
pub fn cartesian(s: (f64, f64)) -> (f64, f64) {
    (s.0 + 0.5 * s.1, s.1 * 3f64.sqrt() / 2.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub id: usize,
    /// Incident edge of each type, indexed by type.
    pub edges: [usize; 3],
    /// Three plaquettes meeting at this vertex.
    pub plaquettes: [usize; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct Edge {
    pub id: usize,
    pub edge_type: usize,
    pub vertices: [usize; 2],
    /// The two plaquettes whose boundary contains this edge.
    pub sides: [usize; 2],
    /// The two type-matching plaquettes the edge "terminates on".
    pub ends: [usize; 2],
}

#[derive(Clone, Debug, Serialize)]
pub struct Plaquette {
    pub id: usize,
    pub color: usize,
    pub site: Site,
    /// Counter-clockwise boundary vertices; `boundary_edges[k]` joins
    /// `boundary_vertices[k-1]` and `boundary_vertices[k]`.
    pub boundary_vertices: [usize; 6],
    pub boundary_edges: [usize; 6],
    /// Edges leaving the boundary outward, one per boundary vertex.
    pub terminating_edges: [usize; 6],
    /// Neighbour plaquette across `boundary_edges[k]`.
    pub neighbors: [usize; 6],
}

#[derive(Clone, Debug, Serialize)]
pub struct HexTorus {
    pub l1: usize,
    pub l2: usize,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub plaquettes: Vec<Plaquette>,
}

impl HexTorus {
    pub fn new(l1: usize, l2: usize) -> Result<Self> {
        build_hex_torus(l1, l2)
    }

    /// Plaquette id of a (possibly unreduced) site.
    pub fn plaquette_at(&self, s: Site) -> usize {
        let k = (s.0 - s.1).rem_euclid(3);
        let u = (s.0 - s.1 - k) / 3;
        let v = s.1 + u;
        let u = u.rem_euclid(self.l1 as i64) as usize;
        let v = v.rem_euclid(self.l2 as i64) as usize;
        (u * self.l2 + v) * 3 + k as usize
    }

    /// Canonical site of a plaquette.
    pub fn site_of(&self, p: usize) -> Site {
        let k = (p % 3) as i64;
        let cell = p / 3;
        let (u, v) = ((cell / self.l2) as i64, (cell % self.l2) as i64);
        (2 * u + v + k, v - u)
    }

    /// Unit-cell coordinates of a plaquette.
    pub fn cell_of(&self, p: usize) -> (usize, usize) {
        let cell = p / 3;
        (cell / self.l2, cell % self.l2)
    }

    /// Plaquette of colour `color` in unit cell `(u, v)` (taken mod the torus).
    pub fn plaquette_in_cell(&self, u: i64, v: i64, color: usize) -> usize {
        let u = u.rem_euclid(self.l1 as i64) as usize;
        let v = v.rem_euclid(self.l2 as i64) as usize;
        (u * self.l2 + v) * 3 + color
    }

    /// Vertex for the upward triangle `{s, s+(1,0), s+(0,1)}`.
    pub fn up_vertex(&self, s: Site) -> usize {
        2 * self.plaquette_at(s)
    }

    /// Vertex for the downward triangle `{s+(1,0), s+(0,1), s+(1,1)}`.
    pub fn down_vertex(&self, s: Site) -> usize {
        2 * self.plaquette_at(s) + 1
    }

    /// Honeycomb edge dual to the triangular edge between adjacent sites.
    pub fn edge_between(&self, a: Site, b: Site) -> usize {
        let d = sub(b, a);
        let (base, dir) = match d {
            (1, 0) => (a, 0),
            (0, 1) => (a, 1),
            (-1, 1) => (a, 2),
            (-1, 0) => (b, 0),
            (0, -1) => (b, 1),
            (1, -1) => (b, 2),
            _ => panic!("sites {a:?} and {b:?} are not adjacent"),
        };
        3 * self.plaquette_at(base) + dir
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_plaquettes(&self) -> usize {
        self.plaquettes.len()
    }

    /// `P^(c)`: plaquettes of colour `c`, in id order.
    pub fn plaquettes_of_color(&self, c: usize) -> Vec<usize> {
        (0..self.plaquettes.len()).filter(|p| p % 3 == c % 3).collect()
    }

    /// `E^(c)`: edges of type `c`, in id order.
    pub fn edges_of_type(&self, c: usize) -> Vec<usize> {
        self.edges.iter().filter(|e| e.edge_type == c % 3).map(|e| e.id).collect()
    }

    pub fn plaquette(&self, p: usize) -> Result<&Plaquette> {
        self.plaquettes.get(p).ok_or_else(|| Error::InvalidId(format!("plaquette {p}")))
    }

    /// Ordered cyclic boundary (vertices, edges) of a plaquette.
    pub fn plaquette_boundary(&self, p: usize) -> Result<([usize; 6], [usize; 6])> {
        let pl = self.plaquette(p)?;
        Ok((pl.boundary_vertices, pl.boundary_edges))
    }

    /// The six edges terminating on a plaquette.
    pub fn terminating_edges(&self, p: usize) -> Result<[usize; 6]> {
        Ok(self.plaquette(p)?.terminating_edges)
    }

    /// Boundary edges of `p` of the given type.
    pub fn boundary_edges_of_type(&self, p: usize, t: usize) -> Vec<usize> {
        self.plaquettes[p]
            .boundary_edges
            .iter()
            .copied()
            .filter(|&e| self.edges[e].edge_type == t % 3)
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lattice serializes")
    }

    pub fn superlattice(&self, color: usize) -> SuperLattice {
        SuperLattice::new(self, color % 3)
    }
}

pub fn build_hex_torus(l1: usize, l2: usize) -> Result<HexTorus> {
    if l1 < 2 || l2 < 2 {
        return Err(Error::InvalidSize(format!("hex torus needs L1, L2 >= 2, got ({l1}, {l2})")));
    }
    let np = 3 * l1 * l2;
    let mut h = HexTorus { l1, l2, vertices: Vec::new(), edges: Vec::new(), plaquettes: Vec::new() };

    let mut edges = Vec::with_capacity(3 * np);
    for p in 0..np {
        let s = h.site_of(p);
        for (dir, d) in [(1, 0), (0, 1), (-1, 1)].into_iter().enumerate() {
            let t = add(s, d);
            // The two triangles sharing segment s-t have third corners c1, c2.
            let (tri_a, tri_b, c1, c2) = match dir {
                0 => (h.up_vertex(s), h.down_vertex(sub(s, (0, 1))), add(s, (0, 1)), add(s, (1, -1))),
                1 => (h.up_vertex(s), h.down_vertex(sub(s, (1, 0))), add(s, (1, 0)), add(s, (-1, 1))),
                _ => (h.up_vertex(sub(s, (1, 0))), h.down_vertex(sub(s, (1, 0))), add(s, (-1, 0)), add(s, (0, 1))),
            };
            debug_assert_eq!(site_color(c1), site_color(c2));
            edges.push(Edge {
                id: 3 * p + dir,
                edge_type: site_color(c1),
                vertices: [tri_a, tri_b],
                sides: [p, h.plaquette_at(t)],
                ends: [h.plaquette_at(c1), h.plaquette_at(c2)],
            });
        }
    }
    h.edges = edges;

    let mut plaquettes = Vec::with_capacity(np);
    for p in 0..np {
        let s = h.site_of(p);
        let tri = |k: usize| -> usize {
            match k % 6 {
                0 => h.up_vertex(s),
                1 => h.down_vertex(sub(s, (1, 0))),
                2 => h.up_vertex(sub(s, (1, 0))),
                3 => h.down_vertex(sub(s, (1, 1))),
                4 => h.up_vertex(sub(s, (0, 1))),
                _ => h.down_vertex(sub(s, (0, 1))),
            }
        };
        let boundary_vertices: [usize; 6] = std::array::from_fn(tri);
        let boundary_edges: [usize; 6] = std::array::from_fn(|k| h.edge_between(s, add(s, DIRS[k])));
        let terminating_edges: [usize; 6] =
            std::array::from_fn(|k| h.edge_between(add(s, DIRS[k]), add(s, DIRS[(k + 1) % 6])));
        let neighbors: [usize; 6] = std::array::from_fn(|k| h.plaquette_at(add(s, DIRS[k])));
        plaquettes.push(Plaquette {
            id: p,
            color: site_color(s),
            site: s,
            boundary_vertices,
            boundary_edges,
            terminating_edges,
            neighbors,
        });
    }
    h.plaquettes = plaquettes;

    let mut vertices: Vec<Vertex> = (0..2 * np)
        .map(|id| {
            let s = h.site_of(id / 2);
            let corners = if id % 2 == 0 {
                [s, add(s, (1, 0)), add(s, (0, 1))]
            } else {
                [add(s, (1, 0)), add(s, (0, 1)), add(s, (1, 1))]
            };
            let mut plaqs = corners.map(|c| h.plaquette_at(c));
            plaqs.sort_by_key(|&p| p % 3);
            Vertex { id, edges: [usize::MAX; 3], plaquettes: plaqs }
        })
        .collect();
    for e in &h.edges {
        for &v in &e.vertices {
            vertices[v].edges[e.edge_type] = e.id;
        }
    }
    h.vertices = vertices;
    Ok(h)
}

/// Triangular superlattice of one colour: vertices are the plaquettes of
/// that colour and edges are the edges of the same type.
#[derive(Clone, Debug, Serialize)]
pub struct SuperLattice {
    pub color: usize,
    pub l1: usize,
    pub l2: usize,
    /// Plaquette ids, indexed by unit cell `u * l2 + v`.
    pub vertices: Vec<usize>,
    /// Each super-edge as (hex edge id, [super-vertex a, super-vertex b]).
    pub edges: Vec<(usize, [usize; 2])>,
    /// Super-faces: the plaquettes of the other two colours, each bounded by
    /// three hex edges of this type.
    pub faces: Vec<(usize, [usize; 3])>,
}

/// Neighbour offsets on the superlattice in unit-cell coordinates:
/// `b2`, `b1`, `b1 - b2`.
pub const SUPER_STEPS: [(i64, i64); 3] = [(0, 1), (1, 0), (1, -1)];

impl SuperLattice {
    fn new(h: &HexTorus, color: usize) -> Self {
        let vertices = h.plaquettes_of_color(color);
        let mut edges = Vec::new();
        for &p in &vertices {
            let (u, v) = h.cell_of(p);
            for step in SUPER_STEPS {
                let e = super_edge(h, p, step);
                let q = h.plaquette_in_cell(u as i64 + step.0, v as i64 + step.1, color);
                edges.push((e, [p, q]));
            }
        }
        let faces = (0..h.num_plaquettes())
            .filter(|p| p % 3 != color)
            .map(|p| {
                let es = h.boundary_edges_of_type(p, color);
                (p, [es[0], es[1], es[2]])
            })
            .collect();
        SuperLattice { color, l1: h.l1, l2: h.l2, vertices, edges, faces }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Super-vertex in unit cell `(u, v)`.
    pub fn vertex_at(&self, u: i64, v: i64) -> usize {
        let u = u.rem_euclid(self.l1 as i64) as usize;
        let v = v.rem_euclid(self.l2 as i64) as usize;
        self.vertices[u * self.l2 + v]
    }

    /// Hex edge ids of the super-edges.
    pub fn edge_set(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().map(|e| e.0).collect();
        v.sort_unstable();
        v
    }
}

/// Hex edge joining colour plaquette `p` to its superlattice neighbour one
/// `step` away (`step` from [`SUPER_STEPS`]).
pub fn super_edge(h: &HexTorus, p: usize, step: (i64, i64)) -> usize {
    let s = h.site_of(p);
    match step {
        (0, 1) => h.edge_between(add(s, (1, 0)), add(s, (0, 1))),
        (1, 0) => h.edge_between(add(s, (1, -1)), add(s, (1, 0))),
        (1, -1) => h.edge_between(add(s, (0, -1)), add(s, (1, -1))),
        _ => panic!("unsupported superlattice step {step:?}"),
    }
}

/// Homology cycle of the torus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Cycle {
    /// Winds along `b1`.
    B1,
    /// Winds along `b2`.
    B2,
}

impl Cycle {
    pub fn other(self) -> Cycle {
        match self {
            Cycle::B1 => Cycle::B2,
            Cycle::B2 => Cycle::B1,
        }
    }
}

impl SuperLattice {
    /// Straight cycle of super-edges winding along `cycle`, through the
    /// super-vertex in cell `(0, 0)` shifted by `offset` transversally.
    pub fn straight_cycle(&self, h: &HexTorus, cycle: Cycle, offset: i64) -> Vec<usize> {
        let mut out = Vec::new();
        match cycle {
            Cycle::B2 => {
                for v in 0..self.l2 as i64 {
                    out.push(super_edge(h, self.vertex_at(offset, v), (0, 1)));
                }
            }
            Cycle::B1 => {
                for u in 0..self.l1 as i64 {
                    out.push(super_edge(h, self.vertex_at(u, offset), (1, 0)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Super-edges cut by a dual loop winding along `cycle`: for `B2` the
    /// edges between cell columns `offset` and `offset + 1`, for `B1` the
    /// edges between cell rows `offset` and `offset + 1`.
    pub fn dual_cycle(&self, h: &HexTorus, cycle: Cycle, offset: i64) -> Vec<usize> {
        let mut out = Vec::new();
        match cycle {
            Cycle::B2 => {
                for v in 0..self.l2 as i64 {
                    let p = self.vertex_at(offset, v);
                    out.push(super_edge(h, p, (1, 0)));
                    out.push(super_edge(h, p, (1, -1)));
                }
            }
            Cycle::B1 => {
                for u in 0..self.l1 as i64 {
                    out.push(super_edge(h, self.vertex_at(u, offset), (0, 1)));
                    out.push(super_edge(h, self.vertex_at(u, offset + 1), (1, -1)));
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// Triangular torus with one qubit per site and 3-coloured upward triangles.
#[derive(Clone, Debug, Serialize)]
pub struct TriTorus {
    pub l: usize,
    /// Upward triangles `(colour, [corner qubits])`, with corners ordered
    /// `(i,j), (i,j+1), (i+1,j)`.
    pub up_triangles: Vec<(usize, [usize; 3])>,
    /// Downward triangles `{(i+1,j), (i,j+1), (i+1,j+1)}`.
    pub down_triangles: Vec<[usize; 3]>,
}

impl TriTorus {
    pub fn new(l: usize) -> Result<Self> {
        build_tri_torus(l)
    }

    pub fn num_qubits(&self) -> usize {
        self.l * self.l
    }

    pub fn qubit(&self, i: i64, j: i64) -> usize {
        let l = self.l as i64;
        (i.rem_euclid(l) * l + j.rem_euclid(l)) as usize
    }

    pub fn up_index(&self, i: i64, j: i64) -> usize {
        self.qubit(i, j)
    }

    /// Upward triangles of a colour, as corner lists.
    pub fn triangles_of_color(&self, c: usize) -> Vec<[usize; 3]> {
        self.up_triangles.iter().filter(|t| t.0 == c % 3).map(|t| t.1).collect()
    }

    /// Qubits along the row `j = const` (winds along `(1,0)`).
    pub fn row(&self, j: i64) -> Vec<usize> {
        (0..self.l as i64).map(|i| self.qubit(i, j)).collect()
    }

    /// Qubits along the column `i = const` (winds along `(0,1)`).
    pub fn column(&self, i: i64) -> Vec<usize> {
        (0..self.l as i64).map(|j| self.qubit(i, j)).collect()
    }
}

pub fn build_tri_torus(l: usize) -> Result<TriTorus> {
    if l == 0 || l % 3 != 0 {
        return Err(Error::InvalidSize(format!("triangular torus needs L a positive multiple of 3, got {l}")));
    }
    let mut t = TriTorus { l, up_triangles: Vec::new(), down_triangles: Vec::new() };
    for i in 0..l as i64 {
        for j in 0..l as i64 {
            let color = (i - j).rem_euclid(3) as usize;
            let up = [t.qubit(i, j), t.qubit(i, j + 1), t.qubit(i + 1, j)];
            let down = [t.qubit(i + 1, j), t.qubit(i, j + 1), t.qubit(i + 1, j + 1)];
            t.up_triangles.push((color, up));
            t.down_triangles.push(down);
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        let h = build_hex_torus(2, 2).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges(), h.num_plaquettes()), (24, 36, 12));
        let h = build_hex_torus(3, 3).unwrap();
        assert_eq!((h.num_vertices(), h.num_edges(), h.num_plaquettes()), (54, 81, 27));
        for c in 0..3 {
            assert_eq!(h.plaquettes_of_color(c).len(), 9);
            assert_eq!(h.edges_of_type(c).len(), 27);
        }
        assert!(build_hex_torus(1, 3).is_err());
    }

    #[test]
    fn vertices_have_one_edge_of_each_type() {
        for (l1, l2) in [(2, 2), (2, 3), (3, 4)] {
            let h = build_hex_torus(l1, l2).unwrap();
            for v in &h.vertices {
                for (t, &e) in v.edges.iter().enumerate() {
                    assert_eq!(h.edges[e].edge_type, t);
                    assert!(h.edges[e].vertices.contains(&v.id));
                }
                let colors: Vec<usize> = v.plaquettes.iter().map(|p| p % 3).collect();
                assert_eq!(colors, vec![0, 1, 2]);
            }
        }
    }

    #[test]
    fn boundaries_alternate_and_close() {
        let h = build_hex_torus(3, 2).unwrap();
        for p in &h.plaquettes {
            let r = p.color;
            for k in 0..6 {
                let e = &h.edges[p.boundary_edges[k]];
                let want = if k % 2 == 0 { (r + 2) % 3 } else { (r + 1) % 3 };
                assert_eq!(e.edge_type, want);
                let prev = p.boundary_vertices[(k + 5) % 6];
                let cur = p.boundary_vertices[k];
                let mut ends = e.vertices;
                ends.sort_unstable();
                let mut expect = [prev, cur];
                expect.sort_unstable();
                assert_eq!(ends, expect);
                assert!(e.sides.contains(&p.id));
                assert_eq!(h.plaquettes[p.neighbors[k]].color != r, true);
            }
            for k in 0..6 {
                let e = &h.edges[p.terminating_edges[k]];
                assert_eq!(e.edge_type, r);
                assert!(e.ends.contains(&p.id));
                assert!(e.vertices.contains(&p.boundary_vertices[k]));
            }
        }
    }

    #[test]
    fn superlattice_is_triangular() {
        let h = build_hex_torus(3, 4).unwrap();
        for c in 0..3 {
            let s = h.superlattice(c);
            assert_eq!(s.num_vertices(), 12);
            assert_eq!(s.edges.len(), 36);
            assert_eq!(s.faces.len(), 24);
            let set: HashSet<usize> = s.edge_set().into_iter().collect();
            assert_eq!(set.len(), 36);
            assert_eq!(s.edge_set(), h.edges_of_type(c));
            for (e, [a, b]) in &s.edges {
                let mut ends = h.edges[*e].ends;
                ends.sort_unstable();
                let mut ab = [*a, *b];
                ab.sort_unstable();
                assert_eq!(ends, ab);
            }
        }
    }

    #[test]
    fn tri_torus_colors_meet_at_corners() {
        let t = build_tri_torus(6).unwrap();
        let mut seen = vec![HashSet::new(); t.num_qubits()];
        for (c, tri) in &t.up_triangles {
            for &q in tri {
                seen[q].insert(*c);
            }
        }
        assert!(seen.iter().all(|s| s.len() == 3));
        assert!(build_tri_torus(4).is_err());
    }
}
