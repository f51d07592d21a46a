use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::region::{modulus_bounds, polygon_contains, ratio_bounds_of, ModulusBounds, Region};
use super::{JuliaError, Quadrant, QuadraticMap};
use crate::graph::{EdgeId, MwGraph, Path, VertexId};

/// Inner rhombus with vertices `±real` and `±i·imag`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rhombus {
    pub real: f64,
    pub imag: f64,
}

impl Rhombus {
    /// Vertices on the escape circle and at `±i/√2`. For `c = −1/2` the
    /// distance from the origin to a side is then `√(9 + 3√3)/6`.
    pub fn default_for(map: &QuadraticMap) -> Self {
        Rhombus {
            real: map.escape_radius(),
            imag: core::f64::consts::FRAC_1_SQRT_2,
        }
    }
}

/// Which region the modulus bounds for an edge `α → β` are taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundRegion {
    /// The region of `α`, which contains the image of `β`'s region.
    Source,
    /// The image of `β`'s region under the edge's branch (tighter; one
    /// extra branch evaluation per edge).
    Image,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionConfig {
    /// Boundary samples per side of each initial region.
    pub samples_per_side: usize,
    pub bound_region: BoundRegion,
    /// Added to the per-segment curvature slack in every modulus bound.
    pub extra_slack: f64,
    /// Allowed overshoot when checking that images stay inside regions.
    pub containment_tol: f64,
    /// Fixed rhombus; `None` tries the default, then a coarse grid.
    pub rhombus: Option<Rhombus>,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig {
            samples_per_side: 256,
            bound_region: BoundRegion::Source,
            extra_slack: 0.0,
            containment_tol: 1e-9,
            rhombus: None,
        }
    }
}

/// Membership in the closed initial region of quadrant `q`: inside the
/// escape disk, inside the quadrant, and outside the rhombus.
pub fn in_base_region(z: Complex64, q: Quadrant, radius: f64, rhombus: Rhombus, tol: f64) -> bool {
    let (sx, sy) = q.signs();
    let x = sx * z.re;
    let y = sy * z.im;
    x >= -tol
        && y >= -tol
        && z.norm() <= radius + tol
        && x / rhombus.real + y / rhombus.imag >= 1.0 - tol
}

/// Boundary samples of the initial region in quadrant `q`: rhombus side,
/// imaginary-axis segment, escape arc, and (when the rhombus is narrower
/// than the disk) a real-axis segment. Corners are always samples.
pub fn base_boundary(q: Quadrant, radius: f64, rhombus: Rhombus, per_side: usize) -> Vec<Complex64> {
    let n = per_side.max(1);
    let step = |i: usize| i as f64 / n as f64;
    let mut pts = Vec::with_capacity(4 * n);
    let (p, h) = (rhombus.real, rhombus.imag);
    for i in 0..n {
        let t = step(i);
        pts.push(Complex64::new(p * (1.0 - t), h * t));
    }
    for i in 0..n {
        pts.push(Complex64::new(0.0, h + (radius - h) * step(i)));
    }
    for i in 0..n {
        pts.push(Complex64::from_polar(radius, FRAC_PI_2 * (1.0 - step(i))));
    }
    if p < radius {
        for i in 0..n {
            pts.push(Complex64::new(radius + (p - radius) * step(i), 0.0));
        }
    }
    let (sx, sy) = q.signs();
    for z in &mut pts {
        *z = Complex64::new(sx * z.re, sy * z.im);
    }
    pts
}

/// The quadrant graph with placeholder ratios; only its shape is used.
fn quadrant_topology() -> MwGraph {
    let mut b = MwGraph::builder(4);
    for q in Quadrant::ALL {
        b = b.label(q.index(), String::from(q.letter()));
    }
    for q in Quadrant::ALL {
        for t in q.successors() {
            b = b.edge(q.index(), t.index(), 0.5);
        }
    }
    b.build().expect("quadrant graph is well formed")
}

/// Letters of the quadrants visited by a path, e.g. `ABD`.
pub fn path_word(path: &Path, graph: &MwGraph) -> String {
    let letter = |v: VertexId| Quadrant::from_index(v).map_or('?', Quadrant::letter);
    let mut s = String::with_capacity(path.len() + 1);
    s.push(letter(path.source()));
    for &e in path.edges() {
        s.push(letter(graph.edge(e).target));
    }
    s
}

/// `α·e` with its first edge removed (for the empty `α`, the empty path at
/// the target of `e`).
fn shift_extend(alpha: &Path, e: EdgeId, topo: &MwGraph) -> Path {
    match alpha.edges().split_first() {
        None => Path::empty(topo.edge(e).target),
        Some((&first, rest)) => {
            let mut edges = Vec::with_capacity(alpha.len());
            edges.extend_from_slice(rest);
            edges.push(e);
            Path::from_parts_unchecked(topo.edge(first).target, edges)
        }
    }
}

fn push_through(map: &QuadraticMap, q: Quadrant, boundary: &[Complex64]) -> Vec<Complex64> {
    boundary.iter().map(|&w| map.branch_into(q, w)).collect()
}

/// The four initial regions and the level-0 graph.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialPartition {
    pub rhombus: Rhombus,
    pub regions: Vec<Region>,
    /// Quadrant graph carrying level-0 upper and lower ratios.
    pub graph: MwGraph,
}

fn check_containment(
    map: &QuadraticMap,
    rhombus: Rhombus,
    config: &PartitionConfig,
) -> Result<Vec<Region>, JuliaError> {
    let radius = map.escape_radius();
    if !(rhombus.real > 0.0 && rhombus.real <= radius && rhombus.imag > 0.0 && rhombus.imag < radius)
    {
        return Err(JuliaError::BadConfig("rhombus must fit inside the escape disk"));
    }
    let tol = config.containment_tol;
    let regions: Vec<Region> = Quadrant::ALL
        .iter()
        .map(|&q| {
            Region::new(
                Path::empty(q.index()),
                q,
                base_boundary(q, radius, rhombus, config.samples_per_side),
            )
        })
        .collect();
    for r in &regions {
        let c = map.c();
        if polygon_contains(&r.boundary, c) || in_base_region(c, r.quadrant, radius, rhombus, tol) {
            return Err(JuliaError::BranchPointInRegion {
                quadrant: r.quadrant,
            });
        }
    }
    for source in Quadrant::ALL {
        for target in source.successors() {
            let image = push_through(map, source, &regions[target.index()].boundary);
            if let Some(z) = image
                .iter()
                .find(|&&z| !in_base_region(z, source, radius, rhombus, tol))
            {
                return Err(JuliaError::Containment {
                    source_quadrant: source,
                    target,
                    re: z.re,
                    im: z.im,
                });
            }
        }
    }
    Ok(regions)
}

fn candidate_rhombi(map: &QuadraticMap) -> Vec<Rhombus> {
    let radius = map.escape_radius();
    let mut out = Vec::new();
    out.push(Rhombus::default_for(map));
    for i in 0..6 {
        let real = radius * (1.0 - 0.1 * i as f64);
        for j in 1..20 {
            out.push(Rhombus {
                real,
                imag: radius * j as f64 / 20.0,
            });
        }
    }
    out
}

/// Builds the four quadrant regions and checks that every inverse-branch
/// image of a region lies inside the region it is assigned to.
///
/// With no rhombus configured, the default is tried first and then a coarse
/// grid; the first rhombus passing the check is used and reported.
pub fn build_initial_regions(
    map: &QuadraticMap,
    config: &PartitionConfig,
) -> Result<InitialPartition, JuliaError> {
    if config.samples_per_side == 0 {
        return Err(JuliaError::BadConfig("samples_per_side must be positive"));
    }
    if !(config.extra_slack >= 0.0 && config.containment_tol >= 0.0) {
        return Err(JuliaError::BadConfig("slack and tolerance must be nonnegative"));
    }
    let (rhombus, regions) = match config.rhombus {
        Some(r) => (r, check_containment(map, r, config)?),
        None => {
            let candidates = candidate_rhombi(map);
            let tried = candidates.len();
            let mut first = None;
            let mut found = None;
            for r in candidates {
                match check_containment(map, r, config) {
                    Ok(regions) => {
                        found = Some((r, regions));
                        break;
                    }
                    Err(e) => {
                        if first.is_none() {
                            first = Some(e);
                        }
                    }
                }
            }
            match found {
                Some(f) => f,
                None => {
                    return Err(JuliaError::NoParallelogram {
                        tried,
                        default_failure: Box::new(first.unwrap_or(JuliaError::EmptyRegion)),
                    })
                }
            }
        }
    };
    let topology = quadrant_topology();
    let vertices: Vec<Path> = regions.iter().map(|r| r.id.clone()).collect();
    let (graph, _) = assemble(map, &topology, &vertices, &regions, config)?;
    Ok(InitialPartition {
        rhombus,
        regions,
        graph,
    })
}

/// Level-`k` graph: one vertex per region, and for each vertex `α` and each
/// quadrant edge `e` leaving its last quadrant an edge `α → shift(α·e)`.
fn assemble(
    map: &QuadraticMap,
    topology: &MwGraph,
    vertices: &[Path],
    regions: &[Region],
    config: &PartitionConfig,
) -> Result<(MwGraph, Vec<ModulusBounds>), JuliaError> {
    let name = |i: usize| path_word(&vertices[i], topology);
    let in_region = |i: usize| move |error: JuliaError| JuliaError::InRegion {
        region: name(i),
        error: Box::new(error),
    };
    let mut bounds = Vec::with_capacity(regions.len());
    for (i, r) in regions.iter().enumerate() {
        bounds.push(modulus_bounds(&r.boundary, config.extra_slack).map_err(in_region(i))?);
    }
    let mut b = MwGraph::builder(vertices.len());
    for (i, alpha) in vertices.iter().enumerate() {
        let home = Quadrant::from_index(alpha.source()).ok_or(JuliaError::BadConfig("vertex outside quadrant graph"))?;
        for &e in topology.outgoing(alpha.target(topology)) {
            let beta = shift_extend(alpha, e, topology);
            let j = vertices
                .binary_search(&beta)
                .map_err(|_| JuliaError::BadConfig("refined vertex set is not closed under shift"))?;
            let (upper, lower) = match config.bound_region {
                BoundRegion::Source => (0.5 / bounds[i].min, 0.5 / bounds[i].max),
                BoundRegion::Image => {
                    let image = push_through(map, home, &regions[j].boundary);
                    let r = ratio_bounds_of(&image, config.extra_slack).map_err(in_region(i))?;
                    (r.upper, r.lower)
                }
            };
            if !(upper < 1.0) {
                return Err(JuliaError::NotContracting {
                    vertex: name(i),
                    upper,
                });
            }
            b.push(i, j, upper, Some(lower));
        }
    }
    Ok((b.build()?, bounds))
}

/// One level of the refined graph-directed system.
#[derive(Debug, Clone)]
pub struct RefinedIfs {
    map: QuadraticMap,
    config: PartitionConfig,
    rhombus: Rhombus,
    topology: MwGraph,
    level: usize,
    regions: Vec<Region>,
    bounds: Vec<ModulusBounds>,
    graph: MwGraph,
}

impl RefinedIfs {
    /// Level 0: the four quadrant regions.
    pub fn initial(map: QuadraticMap, config: PartitionConfig) -> Result<Self, JuliaError> {
        let init = build_initial_regions(&map, &config)?;
        let topology = quadrant_topology();
        let vertices: Vec<Path> = init.regions.iter().map(|r| r.id.clone()).collect();
        let (graph, bounds) = assemble(&map, &topology, &vertices, &init.regions, &config)?;
        Ok(RefinedIfs {
            map,
            config,
            rhombus: init.rhombus,
            topology,
            level: 0,
            regions: init.regions,
            bounds,
            graph,
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn map(&self) -> &QuadraticMap {
        &self.map
    }

    pub fn rhombus(&self) -> Rhombus {
        self.rhombus
    }

    pub fn config(&self) -> &PartitionConfig {
        &self.config
    }

    /// Graph with upper and lower ratio bounds on every edge.
    pub fn graph(&self) -> &MwGraph {
        &self.graph
    }

    /// The quadrant graph the region ids are paths in (ratios are
    /// placeholders).
    pub fn quadrant_graph(&self) -> &MwGraph {
        &self.topology
    }

    /// Regions in lexicographic order of their ids; index = graph vertex.
    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn modulus_bounds(&self) -> &[ModulusBounds] {
        &self.bounds
    }

    pub fn vertex_count(&self) -> usize {
        self.regions.len()
    }

    pub fn vertex_index(&self, id: &Path) -> Option<usize> {
        self.regions.binary_search_by(|r| r.id.cmp(id)).ok()
    }

    pub fn word(&self, vertex: usize) -> String {
        path_word(&self.regions[vertex].id, &self.topology)
    }

    /// Level `k + 1`: the region of `e·α` is the image of `α`'s region under
    /// the branch of `e`, which maps into `e`'s source quadrant.
    pub fn refine(&self) -> Result<RefinedIfs, JuliaError> {
        let mut next: Vec<Region> = Vec::with_capacity(2 * self.regions.len());
        for (e, edge) in self.topology.edges().iter().enumerate() {
            let q = Quadrant::from_index(edge.source).ok_or(JuliaError::BadConfig("bad quadrant"))?;
            for r in self.regions.iter().filter(|r| r.id.source() == edge.target) {
                let mut edges = Vec::with_capacity(r.id.len() + 1);
                edges.push(e);
                edges.extend_from_slice(r.id.edges());
                next.push(Region::new(
                    Path::from_parts_unchecked(edge.source, edges),
                    q,
                    push_through(&self.map, q, &r.boundary),
                ));
            }
        }
        next.sort_by(|a, b| a.id.cmp(&b.id));
        let vertices: Vec<Path> = next.iter().map(|r| r.id.clone()).collect();
        let (graph, bounds) = assemble(&self.map, &self.topology, &vertices, &next, &self.config)?;
        Ok(RefinedIfs {
            map: self.map,
            config: self.config,
            rhombus: self.rhombus,
            topology: self.topology.clone(),
            level: self.level + 1,
            regions: next,
            bounds,
            graph,
        })
    }
}
