//! Quadratic Majorana models: the Kekulé–Kitaev Bloch gap, the plaquette ring
//! interpolation, the Kekulé vortex disc, and the dimer-crossing parity of the
//! unrolled period-3 path.
//!
//! Convention: `H = (i/2) Σ_{j,k} A_jk γ_j γ_k = i Σ_{j<k} A_jk γ_j γ_k`, so a
//! single dimer `i γ_1 γ_2` has single-particle energy 1 and many-body gap 2.
//! Honeycomb vertices are the up/down triangles of the plaquette lattice;
//! bonds are oriented up → down, which puts every hexagon in the vortex-free
//! sector.

use std::collections::{HashMap, HashSet};
use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix, Matrix3, SymmetricEigen};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{cartesian, site_color};

type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CouplingVector {
    pub j: [f64; 3],
}

impl CouplingVector {
    /// Normalizes to unit sum; every component must be positive.
    pub fn new(jx: f64, jy: f64, jz: f64) -> Result<Self> {
        let j = [jx, jy, jz];
        if j.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("couplings must be positive, got {j:?}")));
        }
        let s: f64 = j.iter().sum();
        Ok(CouplingVector { j: j.map(|v| v / s) })
    }

    /// Uniform on the simplex, rejected until every component is at least
    /// `min_component`.
    pub fn sample<R: Rng>(rng: &mut R, min_component: f64) -> Result<Self> {
        if !(0.0..1.0 / 3.0).contains(&min_component) {
            return Err(Error::InvalidArgument(format!("min component {min_component} out of range")));
        }
        loop {
            let (mut a, mut b): (f64, f64) = (rng.gen(), rng.gen());
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            let j = [a, b - a, 1.0 - b];
            if j.iter().all(|&v| v >= min_component) {
                return Ok(CouplingVector { j });
            }
        }
    }

    /// The winding path `J(θ)` around the symmetric point.
    pub fn on_path(lambda: f64, theta: f64) -> [f64; 3] {
        let third = 1.0 / 3.0;
        [
            third + lambda * theta.cos(),
            third + lambda * (theta - 2.0 * PI / 3.0).cos(),
            third + lambda * (theta + 2.0 * PI / 3.0).cos(),
        ]
    }
}

/// Closed-form gap `2 sqrt(Jx² + Jy² + Jz² − JxJy − JyJz − JzJx)`.
pub fn gap_formula(j: &CouplingVector) -> f64 {
    let [x, y, z] = j.j;
    let q = x * x + y * y + z * z - x * y - y * z - z * x;
    2.0 * q.max(0.0).sqrt()
}

#[derive(Clone, Debug)]
pub struct MajoranaQuadratic {
    pub a: DMatrix<f64>,
}

impl MajoranaQuadratic {
    pub fn zeros(n: usize) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::InvalidSize(format!("Majorana mode count must be even, got {n}")));
        }
        Ok(MajoranaQuadratic { a: DMatrix::zeros(n, n) })
    }

    pub fn from_matrix(a: DMatrix<f64>) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() % 2 != 0 {
            return Err(Error::InvalidSize(format!("need an even square matrix, got {}x{}", a.nrows(), a.ncols())));
        }
        let asym = (&a + a.transpose()).amax();
        if asym > 1e-12 {
            return Err(Error::InvalidArgument(format!("matrix is not antisymmetric (|A+Aᵀ| = {asym:e})")));
        }
        Ok(MajoranaQuadratic { a })
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    /// Adds `w · i γ_j γ_k`.
    pub fn add_bond(&mut self, j: usize, k: usize, w: f64) {
        self.a[(j, k)] += w;
        self.a[(k, j)] -= w;
    }

    /// Eigenvalues of the Hermitian matrix `iA`, ascending.
    pub fn hermitian_spectrum(&self) -> Vec<f64> {
        let ia = self.a.map(|v| C64::new(0.0, v));
        let mut e: Vec<f64> = SymmetricEigen::new(ia).eigenvalues.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e
    }

    /// The `n/2` non-negative single-particle energies `ε_k`, ascending.
    pub fn energies(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.a.clone().singular_values().iter().copied().collect();
        s.sort_by(f64::total_cmp);
        // Singular values of a real antisymmetric matrix come in equal pairs.
        s.into_iter().step_by(2).collect()
    }

    pub fn many_body_gap(&self) -> f64 {
        2.0 * self.energies().first().copied().unwrap_or(0.0)
    }
}

/// Triangle of the plaquette lattice: `(i, j, 0)` is the up triangle with
/// corners `(i,j), (i,j+1), (i+1,j)`; `(i, j, 1)` the down triangle with
/// corners `(i+1,j), (i,j+1), (i+1,j+1)`.
pub type Tri = (i64, i64, u8);

fn tri_center(t: Tri) -> (f64, f64) {
    let d = if t.2 == 0 { 1.0 / 3.0 } else { 2.0 / 3.0 };
    (t.0 as f64 + d, t.1 as f64 + d)
}

/// Neighbours of an up triangle with the bond type (color of the plaquettes
/// the bond points at).
fn up_bonds(i: i64, j: i64) -> [(Tri, usize); 3] {
    [
        ((i, j - 1, 1), site_color((i, j + 1))),
        ((i - 1, j, 1), site_color((i + 1, j))),
        ((i, j, 1), site_color((i + 1, j + 1))),
    ]
}

/// Plaquette site → (cell u, cell v, offset k) for the cell basis
/// `b1 = (2,-1)`, `b2 = (1,1)` and the three sites `(k, 0)`.
fn reduce(i: i64, j: i64) -> (i64, i64, usize) {
    let k = (i - j).rem_euclid(3);
    let u = (i - j - k) / 3;
    (u, j + u, k as usize)
}

/// Kekulé–Kitaev Bloch matrix. In the three-plaquette cell there are six
/// Majoranas; up triangles come first. The matrix is `iA(k)` (Hermitian).
#[derive(Clone, Copy, Debug)]
pub struct BlochHamiltonian {
    pub j: CouplingVector,
}

impl BlochHamiltonian {
    pub fn new(j: CouplingVector) -> Self {
        BlochHamiltonian { j }
    }

    /// Up → down block `M(k)`; `iA(k) = [[0, iM], [-iM†, 0]]`.
    pub fn block(&self, k1: f64, k2: f64) -> Matrix3<C64> {
        let mut m = Matrix3::<C64>::zeros();
        for a in 0..3 {
            for (d, ty) in up_bonds(a as i64, 0) {
                let (u, v, b) = reduce(d.0, d.1);
                let ph = C64::from_polar(1.0, k1 * u as f64 + k2 * v as f64);
                m[(a, b)] += ph * self.j.j[ty];
            }
        }
        m
    }

    pub fn matrix(&self, k1: f64, k2: f64) -> DMatrix<C64> {
        let m = self.block(k1, k2);
        let i = C64::new(0.0, 1.0);
        let mut h = DMatrix::zeros(6, 6);
        for a in 0..3 {
            for b in 0..3 {
                h[(a, 3 + b)] = i * m[(a, b)];
                h[(3 + b, a)] = (i * m[(a, b)]).conj();
            }
        }
        h
    }

    /// Smallest single-particle energy at `k`.
    pub fn min_energy(&self, k1: f64, k2: f64) -> f64 {
        self.block(k1, k2).singular_values().min()
    }
}

/// Honeycomb Dirac momenta in the Kekulé cell's reduced coordinates. Both
/// valleys fold onto the zone centre of the tripled cell.
pub fn dirac_points() -> [(f64, f64); 2] {
    let fold = |p1: f64, p2: f64| ((2.0 * p1 - p2).rem_euclid(2.0 * PI), (p1 + p2).rem_euclid(2.0 * PI));
    [fold(2.0 * PI / 3.0, 4.0 * PI / 3.0), fold(4.0 * PI / 3.0, 2.0 * PI / 3.0)]
}

/// Many-body gap minimised over an `n × n` grid of the Kekulé zone together
/// with the Dirac momenta.
pub fn kekule_bloch_gap(j: &CouplingVector, grid: usize) -> Result<f64> {
    if grid == 0 {
        return Err(Error::InvalidArgument("k-grid is empty".into()));
    }
    let h = BlochHamiltonian::new(*j);
    let step = 2.0 * PI / grid as f64;
    let on_grid = (0..grid * grid)
        .into_par_iter()
        .map(|idx| h.min_energy(step * (idx / grid) as f64, step * (idx % grid) as f64))
        .reduce(|| f64::INFINITY, f64::min);
    let special = dirac_points().iter().map(|&(a, b)| h.min_energy(a, b)).fold(f64::INFINITY, f64::min);
    Ok(2.0 * on_grid.min(special))
}

#[derive(Clone, Debug, Serialize)]
pub struct GapRow {
    #[serde(rename = "J_x")]
    pub jx: f64,
    #[serde(rename = "J_y")]
    pub jy: f64,
    #[serde(rename = "J_z")]
    pub jz: f64,
    pub gap_numeric: f64,
    pub gap_formula: f64,
    pub rel_err: f64,
}

pub fn gap_row(j: &CouplingVector, grid: usize) -> Result<GapRow> {
    let num = kekule_bloch_gap(j, grid)?;
    let exact = gap_formula(j);
    let rel_err = if exact > 0.0 { (num - exact).abs() / exact } else { (num - exact).abs() };
    Ok(GapRow { jx: j.j[0], jy: j.j[1], jz: j.j[2], gap_numeric: num, gap_formula: exact, rel_err })
}

/// `samples` seeded random couplings (components ≥ 0.05) compared with the
/// closed form.
pub fn gap_sweep(grid: usize, samples: usize, seed: u64) -> Result<Vec<GapRow>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let js = (0..samples).map(|_| CouplingVector::sample(&mut rng, 0.05)).collect::<Result<Vec<_>>>()?;
    js.iter().map(|j| gap_row(j, grid)).collect()
}

/// Quadratic Hamiltonian of one plaquette ring at path parameter `t`: on
/// each unit interval the two alternating bond classes carry weights
/// `1 − s` and `s`, `s = frac(t)`. A vortex flips the closing bond.
pub fn ring_hamiltonian(m: usize, t: f64, vortex: bool) -> Result<MajoranaQuadratic> {
    if m < 2 || m % 2 != 0 {
        return Err(Error::InvalidSize(format!("ring needs an even number of sites, got {m}")));
    }
    if !(0.0..=3.0).contains(&t) {
        return Err(Error::InvalidArgument(format!("t = {t} outside [0, 3]")));
    }
    let s = t - t.floor();
    let mut h = MajoranaQuadratic::zeros(m)?;
    for j in 0..m {
        let k = (j + 1) % m;
        let w = if j % 2 == 0 { 1.0 - s } else { s };
        let w = if vortex && j == m - 1 { -w } else { w };
        // orient even -> odd
        if j % 2 == 0 {
            h.add_bond(j, k, w);
        } else {
            h.add_bond(k, j, w);
        }
    }
    Ok(h)
}

pub fn ring_gap(m: usize, t: f64, vortex: bool) -> Result<f64> {
    Ok(ring_hamiltonian(m, t, vortex)?.many_body_gap())
}

#[derive(Clone, Debug, Serialize)]
pub struct RingRow {
    pub m: usize,
    pub t: f64,
    pub vortex: bool,
    pub gap: f64,
}

/// Gap along the full period on `steps` equal intervals (endpoints included).
pub fn ring_scan(m: usize, vortex: bool, steps: usize) -> Result<Vec<RingRow>> {
    let steps = steps.max(1);
    (0..=steps)
        .map(|i| {
            let t = 3.0 * i as f64 / steps as f64;
            Ok(RingRow { m, t, vortex, gap: ring_gap(m, t, vortex)? })
        })
        .collect()
}

pub fn ring_min_gap(m: usize, vortex: bool, steps: usize) -> Result<f64> {
    Ok(ring_scan(m, vortex, steps)?.iter().map(|r| r.gap).fold(f64::INFINITY, f64::min))
}

/// Radius around the defect used to measure a mode's central weight.
const CORE_RADIUS: f64 = 3.0;

#[derive(Clone, Debug, Serialize)]
pub struct BoundMode {
    pub energy: f64,
    pub central_weight: f64,
    pub participation_ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectSpectrum {
    pub l: usize,
    pub lambda: f64,
    pub num_modes: usize,
    /// Mode excitation energies `2ε`, ascending.
    pub energies: Vec<f64>,
    pub smallest: f64,
    /// Bulk gap of the far-field couplings, `gap_formula(J(θ))` (θ-independent).
    pub bulk_gap: f64,
    /// Lowest sub-gap mode concentrated near the origin, if any.
    pub bound_mode: Option<BoundMode>,
}

/// Open disc of complete hexagons: every plaquette within distance `l` of the
/// origin plaquette, with bond couplings `J(θ)` evaluated at the polar angle
/// of the bond midpoint.
pub struct DefectDisc {
    pub up: Vec<Tri>,
    pub down: Vec<Tri>,
    pub pos_up: Vec<(f64, f64)>,
    pub pos_down: Vec<(f64, f64)>,
    /// Up → down couplings.
    pub m: DMatrix<f64>,
}

impl DefectDisc {
    pub fn new(l: usize, lambda: f64) -> Result<Self> {
        if l < 6 {
            return Err(Error::InvalidSize(format!("defect disc needs L >= 6, got {l}")));
        }
        if !(0.0..1.0 / 3.0).contains(&lambda) {
            return Err(Error::InvalidArgument(format!("lambda must lie in [0, 1/3), got {lambda}")));
        }
        let r = l as f64;
        let span = 2 * l as i64 + 2;
        let mut tris: Vec<Tri> = Vec::new();
        let mut seen = HashSet::new();
        for i in -span..=span {
            for j in -span..=span {
                let (x, y) = cartesian((i as f64, j as f64));
                if x * x + y * y > r * r {
                    continue;
                }
                for (di, dj, d) in [(0, 0, 0), (-1, 0, 1), (-1, 0, 0), (-1, -1, 1), (0, -1, 0), (0, -1, 1)] {
                    let t = (i + di, j + dj, d);
                    if seen.insert(t) {
                        tris.push(t);
                    }
                }
            }
        }
        tris.sort();
        let (up, down): (Vec<Tri>, Vec<Tri>) = tris.into_iter().partition(|t| t.2 == 0);
        let down_index: HashMap<Tri, usize> = down.iter().enumerate().map(|(k, &t)| (t, k)).collect();
        let pos = |t: &Tri| cartesian(tri_center(*t));
        let pos_up: Vec<_> = up.iter().map(pos).collect();
        let pos_down: Vec<_> = down.iter().map(pos).collect();
        let mut m = DMatrix::zeros(up.len(), down.len());
        for (a, &(i, j, _)) in up.iter().enumerate() {
            for (d, ty) in up_bonds(i, j) {
                let Some(&b) = down_index.get(&d) else { continue };
                let mx = (pos_up[a].0 + pos_down[b].0) / 2.0;
                let my = (pos_up[a].1 + pos_down[b].1) / 2.0;
                m[(a, b)] = CouplingVector::on_path(lambda, my.atan2(mx))[ty];
            }
        }
        Ok(DefectDisc { up, down, pos_up, pos_down, m })
    }

    pub fn num_modes(&self) -> usize {
        self.up.len() + self.down.len()
    }

    /// Full antisymmetric coupling matrix (up triangles first).
    pub fn quadratic(&self) -> MajoranaQuadratic {
        let (nu, nd) = (self.up.len(), self.down.len());
        let mut a = DMatrix::zeros(nu + nd, nu + nd);
        for r in 0..nu {
            for c in 0..nd {
                a[(r, nu + c)] = self.m[(r, c)];
                a[(nu + c, r)] = -self.m[(r, c)];
            }
        }
        MajoranaQuadratic { a }
    }
}

pub fn defect_spectrum(l: usize, lambda: f64) -> Result<DefectSpectrum> {
    let disc = DefectDisc::new(l, lambda)?;
    let svd = disc.m.clone().svd(true, true);
    let (u, vt) = (svd.u.as_ref().expect("requested"), svd.v_t.as_ref().expect("requested"));
    let sv = &svd.singular_values;
    let bulk_gap = gap_formula(&CouplingVector { j: CouplingVector::on_path(lambda, 0.0) });

    let mut energies: Vec<f64> = sv.iter().map(|s| 2.0 * s).collect();
    // An up/down imbalance leaves exact zero modes outside the thin SVD.
    let imbalance = disc.up.len().abs_diff(disc.down.len());
    energies.extend(std::iter::repeat(0.0).take(imbalance));
    energies.sort_by(f64::total_cmp);

    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&a, &b| sv[a].total_cmp(&sv[b]));
    let in_core = |p: &(f64, f64)| p.0.hypot(p.1) < CORE_RADIUS;
    let mut bound_mode = None;
    for &k in &order {
        let energy = 2.0 * sv[k];
        if energy >= bulk_gap / 2.0 {
            break;
        }
        // The mode (u, i v)/√2 puts half its weight on each sublattice.
        let w_up = u.column(k).map(|x| x * x / 2.0);
        let w_down = vt.row(k).transpose().map(|x| x * x / 2.0);
        let central: f64 = w_up.iter().zip(&disc.pos_up).filter(|(_, p)| in_core(p)).map(|(w, _)| w).sum::<f64>()
            + w_down.iter().zip(&disc.pos_down).filter(|(_, p)| in_core(p)).map(|(w, _)| w).sum::<f64>();
        if central >= 0.25 {
            let ipr: f64 = w_up.iter().chain(w_down.iter()).map(|w| w * w).sum();
            bound_mode = Some(BoundMode { energy, central_weight: central, participation_ratio: 1.0 / ipr });
            break;
        }
    }
    Ok(DefectSpectrum {
        l,
        lambda,
        num_modes: disc.num_modes(),
        smallest: energies.first().copied().unwrap_or(0.0),
        energies,
        bulk_gap,
        bound_mode,
    })
}

/// Dimer configuration on a cylinder of the honeycomb: periodic with period
/// `width` along the `(1,0)` direction of the plaquette lattice, open across
/// `height` plaquette rows.
#[derive(Clone, Debug)]
pub struct DimerConfig {
    pub width: i64,
    pub height: i64,
    pub dimers: Vec<(Tri, Tri)>,
}

/// Vertices of the cylinder: both ends of every type-0 bond lying inside the
/// open strip, so the all-type-0 configuration is a perfect matching.
fn cylinder_bonds(width: i64, height: i64) -> (HashSet<Tri>, Vec<(Tri, Tri, usize)>) {
    let wrap = |t: Tri| (t.0.rem_euclid(width), t.1, t.2);
    let mut bonds = Vec::new();
    for i in 0..width {
        for j in 0..height {
            for (d, ty) in up_bonds(i, j) {
                bonds.push(((i, j, 0), wrap(d), ty));
            }
        }
    }
    let inside = |t: &Tri| (1..height - 1).contains(&t.1);
    let vertices =
        bonds.iter().filter(|(a, b, ty)| *ty == 0 && inside(a) && inside(b)).flat_map(|(a, b, _)| [*a, *b]).collect();
    (vertices, bonds)
}

impl DimerConfig {
    fn check_size(width: i64, height: i64) -> Result<()> {
        if width < 3 || width % 3 != 0 {
            return Err(Error::InvalidSize(format!("cylinder width must be a positive multiple of 3, got {width}")));
        }
        if height < 24 {
            return Err(Error::InvalidSize(format!("cylinder height must be at least 24, got {height}")));
        }
        Ok(())
    }

    /// All type-0 dimers.
    pub fn trivial(width: i64, height: i64) -> Result<Self> {
        Self::check_size(width, height)?;
        let (verts, bonds) = cylinder_bonds(width, height);
        let dimers = bonds
            .into_iter()
            .filter(|(a, b, ty)| *ty == 0 && verts.contains(a) && verts.contains(b))
            .map(|(a, b, _)| (a, b))
            .collect();
        Ok(DimerConfig { width, height, dimers })
    }

    /// The period-3 path laid out along the cylinder: type-0 dimers on top,
    /// then a type-1 band, a type-2 band, and type-0 again at the bottom.
    /// Each domain wall runs around hexagons of the third color.
    pub fn unrolled(width: i64, height: i64) -> Result<Self> {
        Self::check_size(width, height)?;
        let (y1, y2, y3) = (2 * height / 3, height / 2, height / 3);
        // Row of the color-c hexagon containing a triangle.
        let hex_row = |t: Tri, c: usize| -> i64 {
            let (i, j, d) = t;
            let corners = if d == 0 { [(i, j), (i + 1, j), (i, j + 1)] } else { [(i + 1, j), (i, j + 1), (i + 1, j + 1)] };
            corners.iter().find(|&&s| site_color(s) == c).expect("three colors per triangle").1
        };
        let dimer_type = |t: Tri| -> usize {
            if hex_row(t, 2) > y1 {
                0
            } else if hex_row(t, 0) > y2 {
                1
            } else if hex_row(t, 1) > y3 {
                2
            } else {
                0
            }
        };
        let (verts, bonds) = cylinder_bonds(width, height);
        let dimers: Vec<(Tri, Tri)> = bonds
            .into_iter()
            .filter(|(a, b, ty)| {
                verts.contains(a) && verts.contains(b) && dimer_type(*a) == *ty && dimer_type(*b) == *ty
            })
            .map(|(a, b, _)| (a, b))
            .collect();
        let cfg = DimerConfig { width, height, dimers };
        if !cfg.is_perfect_matching(&verts) {
            return Err(Error::InvalidArgument("unrolled configuration is not a perfect matching".into()));
        }
        Ok(cfg)
    }

    pub fn is_perfect_matching(&self, verts: &HashSet<Tri>) -> bool {
        let mut count: HashMap<Tri, usize> = HashMap::new();
        for (a, b) in &self.dimers {
            *count.entry(*a).or_default() += 1;
            *count.entry(*b).or_default() += 1;
        }
        count.len() == verts.len() && verts.iter().all(|v| count.get(v) == Some(&1))
    }

    /// Number of dimers crossing the vertical line at horizontal position
    /// `x0`. Triangle centres sit on half-integer positions, so the cut must
    /// avoid those.
    pub fn crossings(&self, x0: f64) -> Result<usize> {
        let w = self.width as f64;
        let x0 = x0.rem_euclid(w);
        if ((2.0 * x0) - (2.0 * x0).round()).abs() < 1e-9 {
            return Err(Error::InvalidArgument(format!("cut at x = {x0} passes through a vertex")));
        }
        let mut n = 0;
        for (a, b) in &self.dimers {
            let xa = cartesian(tri_center(*a)).0;
            let xb = cartesian(tri_center(*b)).0;
            let d = (xb - xa + w / 2.0).rem_euclid(w) - w / 2.0;
            let (lo, hi) = if d >= 0.0 { (xa, xa + d) } else { (xa + d, xa) };
            let k = ((hi - x0) / w).floor();
            if x0 + k * w >= lo {
                n += 1;
            }
        }
        Ok(n)
    }

    /// Inequivalent cut positions `k/2 + 1/4` around the cylinder.
    pub fn cut_positions(&self) -> Vec<f64> {
        (0..2 * self.width).map(|k| k as f64 / 2.0 + 0.25).collect()
    }
}

/// Parity of the difference in crossing counts between two configurations.
pub fn dimer_crossing_parity(config: &DimerConfig, reference: &DimerConfig, x0: f64) -> Result<u8> {
    Ok(((config.crossings(x0)? + reference.crossings(x0)?) % 2) as u8)
}

#[derive(Clone, Debug, Serialize)]
pub struct ParityRow {
    pub cut: f64,
    pub crossings_path: usize,
    pub crossings_trivial: usize,
    pub parity_difference: u8,
}

pub fn parity_scan(width: i64, height: i64) -> Result<Vec<ParityRow>> {
    let path = DimerConfig::unrolled(width, height)?;
    let trivial = DimerConfig::trivial(width, height)?;
    path.cut_positions()
        .into_iter()
        .map(|cut| {
            let (a, b) = (path.crossings(cut)?, trivial.crossings(cut)?);
            Ok(ParityRow { cut, crossings_path: a, crossings_trivial: b, parity_difference: ((a + b) % 2) as u8 })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_dimer_has_gap_two() {
        let mut h = MajoranaQuadratic::zeros(2).unwrap();
        h.add_bond(0, 1, 1.0);
        assert!((h.many_body_gap() - 2.0).abs() < 1e-12);
        let e = h.hermitian_spectrum();
        assert!((e[0] + 1.0).abs() < 1e-12 && (e[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn formula_examples() {
        let g = |a, b, c| gap_formula(&CouplingVector::new(a, b, c).unwrap());
        assert!(g(1.0, 1.0, 1.0).abs() < 1e-15);
        assert!((g(0.5, 0.25, 0.25) - 0.5).abs() < 1e-15);
        assert!((gap_formula(&CouplingVector { j: [1.0, 0.0, 0.0] }) - 2.0).abs() < 1e-15);
        assert!(CouplingVector::new(0.5, -0.1, 0.6).is_err());
    }

    #[test]
    fn bloch_spectrum_is_symmetric() {
        let h = BlochHamiltonian::new(CouplingVector::new(0.2, 0.5, 0.3).unwrap());
        for (k1, k2) in [(0.0, 0.0), (0.7, 2.1), (3.0, 5.5)] {
            let e = SymmetricEigen::new(h.matrix(k1, k2)).eigenvalues;
            let mut e: Vec<f64> = e.iter().copied().collect();
            e.sort_by(f64::total_cmp);
            for i in 0..3 {
                assert!((e[i] + e[5 - i]).abs() < 1e-12);
            }
            assert!((e[3] - h.min_energy(k1, k2)).abs() < 1e-12);
        }
    }

    #[test]
    fn ring_integer_times_are_dimerized() {
        for t in [0.0, 1.0, 2.0, 3.0] {
            assert!((ring_gap(6, t, false).unwrap() - 2.0).abs() < 1e-12);
        }
        assert!(ring_gap(5, 0.5, false).is_err());
    }

    #[test]
    fn small_disc_is_rejected() {
        assert!(defect_spectrum(5, 0.2).is_err());
        assert!(defect_spectrum(6, 0.4).is_err());
    }

    #[test]
    fn cut_through_vertex_is_rejected() {
        let c = DimerConfig::trivial(6, 24).unwrap();
        assert!(c.crossings(1.5).is_err());
        assert!(c.crossings(1.25).is_ok());
    }
}
