//! Incidence graphs of exceptional classes on degree 5 and 6 surfaces, colored by
//! the orbits of a real structure, and their colored automorphisms.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::minimality::{find_contractible_set, ActionContext};
use crate::picard::{LatticeClass, LatticeError, PicardLattice};
use crate::weyl::{close_group, Isometry, WeylError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("sigma is not an involution permuting the exceptional classes")]
    NotAnInvolution,
    #[error("coloring does not partition the vertices into blocks of size 1 or 2")]
    BadColoring,
    #[error("unknown vertex name {0}")]
    UnknownVertex(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorBlock {
    pub members: Vec<usize>,
    pub real: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoredIncidenceGraph {
    pub vertices: Vec<LatticeClass>,
    pub names: Vec<String>,
    pub adjacency: Vec<Vec<bool>>,
    pub blocks: Vec<ColorBlock>,
}

/// `e<i>` for e_i and `d<ij>` for e_0 − e_i − e_j; other classes print their coordinates.
pub fn class_name(c: &LatticeClass) -> String {
    let v = &c.0;
    let nz: Vec<usize> = (1..v.len()).filter(|&i| v[i] != 0).collect();
    if v[0] == 0 && nz.len() == 1 && v[nz[0]] == 1 {
        return format!("e{}", nz[0]);
    }
    if v[0] == 1 && nz.len() == 2 && nz.iter().all(|&i| v[i] == -1) {
        return format!("d{}{}", nz[0], nz[1]);
    }
    format!("{:?}", v)
}

impl ColoredIncidenceGraph {
    fn uncolored(lat: &PicardLattice) -> Result<ColoredIncidenceGraph, GraphError> {
        let d = lat.degree();
        if d != 5 && d != 6 {
            return Err(LatticeError::UnsupportedDegree(d).into());
        }
        let vertices = lat.lines().to_vec();
        let names = vertices.iter().map(class_name).collect();
        let adjacency = vertices
            .iter()
            .map(|a| vertices.iter().map(|b| lat.dot(&a.0, &b.0) == 1).collect())
            .collect();
        Ok(ColoredIncidenceGraph {
            vertices,
            names,
            adjacency,
            blocks: vec![],
        })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn real_count(&self) -> usize {
        self.blocks.iter().filter(|b| b.real).count()
    }

    /// Block index of every vertex.
    pub fn block_of(&self) -> Vec<usize> {
        let mut out = vec![usize::MAX; self.len()];
        for (b, blk) in self.blocks.iter().enumerate() {
            for &v in &blk.members {
                out[v] = b;
            }
        }
        out
    }

    /// Graphviz text: real vertices drawn as boxes, conjugate pairs share a color.
    pub fn to_dot(&self) -> String {
        const PALETTE: &[&str] = &["red", "blue", "darkgreen", "orange", "purple", "brown", "teal", "magenta"];
        let mut s = String::from("graph G {\n");
        let mut pair = 0;
        for blk in &self.blocks {
            let (shape, color) = if blk.real {
                ("box", "black")
            } else {
                pair += 1;
                ("ellipse", PALETTE[(pair - 1) % PALETTE.len()])
            };
            for &v in &blk.members {
                let _ = writeln!(s, "  \"{}\" [shape={}, color={}];", self.names[v], shape, color);
            }
        }
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.adjacency[i][j] {
                    let _ = writeln!(s, "  \"{}\" -- \"{}\";", self.names[i], self.names[j]);
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Incidence graph of all exceptional classes, colored by the orbits of `sigma`.
pub fn build_graph(lat: &PicardLattice, sigma: &Isometry) -> Result<ColoredIncidenceGraph, GraphError> {
    let mut g = ColoredIncidenceGraph::uncolored(lat)?;
    if !sigma.is_valid(lat) || !sigma.compose(sigma).is_identity() {
        return Err(GraphError::NotAnInvolution);
    }
    let perm = sigma.line_permutation(lat);
    let mut seen = vec![false; g.len()];
    for i in 0..g.len() {
        if seen[i] {
            continue;
        }
        seen[i] = true;
        seen[perm[i]] = true;
        g.blocks.push(if perm[i] == i {
            ColorBlock { members: vec![i], real: true }
        } else {
            ColorBlock {
                members: vec![i, perm[i]],
                real: false,
            }
        });
    }
    Ok(g)
}

/// Incidence graph colored by an explicit list of conjugate pairs; every vertex not
/// listed is real.
pub fn graph_with_pairs(lat: &PicardLattice, pairs: &[(&str, &str)]) -> Result<ColoredIncidenceGraph, GraphError> {
    let mut g = ColoredIncidenceGraph::uncolored(lat)?;
    let mut used = BTreeSet::new();
    for (a, b) in pairs {
        let ia = g.index_of(a).ok_or_else(|| GraphError::UnknownVertex(a.to_string()))?;
        let ib = g.index_of(b).ok_or_else(|| GraphError::UnknownVertex(b.to_string()))?;
        if ia == ib || !used.insert(ia) || !used.insert(ib) {
            return Err(GraphError::BadColoring);
        }
        g.blocks.push(ColorBlock {
            members: vec![ia.min(ib), ia.max(ib)],
            real: false,
        });
    }
    for i in 0..g.len() {
        if !used.contains(&i) {
            g.blocks.push(ColorBlock { members: vec![i], real: true });
        }
    }
    g.blocks.sort_by_key(|b| b.members[0]);
    Ok(g)
}

/// The coloring drawn for P²_R(2,1): real d12, e1, e2, d34.
pub fn petersen_figure_a(lat: &PicardLattice) -> Result<ColoredIncidenceGraph, GraphError> {
    graph_with_pairs(lat, &[("e3", "e4"), ("d13", "d24"), ("d14", "d23")])
}

/// The coloring drawn for P²_R(0,2): real d12, d34.
pub fn petersen_figure_b(lat: &PicardLattice) -> Result<ColoredIncidenceGraph, GraphError> {
    graph_with_pairs(lat, &[("e1", "e2"), ("e3", "e4"), ("d13", "d24"), ("d14", "d23")])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermGroup {
    /// Sorted; `p[i]` is the image of vertex i.
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn perm_compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

pub fn perm_closure(gens: &[Vec<usize>], n: usize) -> BTreeSet<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut set = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = perm_compose(g, &x);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Picks generators greedily from the sorted element list.
fn greedy_generators(elements: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = elements.first().map_or(0, |p| p.len());
    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut span = perm_closure(&gens, n);
    for e in elements {
        if !span.contains(e) {
            gens.push(e.clone());
            span = perm_closure(&gens, n);
        }
    }
    gens
}

/// Vertex permutations preserving adjacency, sending real vertices to real vertices
/// and conjugate pairs to conjugate pairs. Pass an empty coloring to ignore colors.
pub fn colored_automorphisms(g: &ColoredIncidenceGraph) -> PermGroup {
    let n = g.len();
    let colored = !g.blocks.is_empty();
    let block = g.block_of();
    let partner: Vec<Option<usize>> = (0..n)
        .map(|v| {
            if !colored {
                return None;
            }
            g.blocks[block[v]].members.iter().copied().find(|&w| w != v)
        })
        .collect();

    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        v: usize,
        g: &ColoredIncidenceGraph,
        colored: bool,
        partner: &[Option<usize>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = g.len();
        if v == n {
            out.push(map.clone());
            return;
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            if colored {
                if partner[v].is_some() != partner[w].is_some() {
                    continue;
                }
                if let Some(p) = partner[v] {
                    if map[p] != usize::MAX && Some(map[p]) != partner[w] {
                        continue;
                    }
                }
            }
            if (0..v).any(|u| g.adjacency[u][v] != g.adjacency[map[u]][w]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            rec(v + 1, g, colored, partner, map, used, out);
            used[w] = false;
            map[v] = usize::MAX;
        }
    }
    rec(0, g, colored, &partner, &mut map, &mut used, &mut out);
    out.sort();
    let generators = greedy_generators(&out);
    PermGroup { elements: out, generators }
}

/// A bijection φ with a[u][v] = b[φ(u)][φ(v)] for all u ≠ v, or None.
///
/// Vertices of `a` are placed in breadth-first order along nonzero entries so that
/// each new vertex is constrained by an already placed neighbour.
pub fn find_isomorphism(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let profile = |m: &[Vec<i64>], v: usize| {
        let mut p: Vec<i64> = (0..n).filter(|&u| u != v).map(|u| m[v][u]).collect();
        p.sort();
        p
    };
    let pa: Vec<Vec<i64>> = (0..n).map(|v| profile(a, v)).collect();
    let pb: Vec<Vec<i64>> = (0..n).map(|v| profile(b, v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = std::collections::VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for u in 0..n {
                if !seen[u] && a[v][u] != 0 {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn rec(
        k: usize,
        order: &[usize],
        a: &[Vec<i64>],
        b: &[Vec<i64>],
        pa: &[Vec<i64>],
        pb: &[Vec<i64>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let v = order[k];
        for w in 0..b.len() {
            if used[w] || pa[v] != pb[w] {
                continue;
            }
            if order[..k].iter().any(|&u| a[u][v] != b[map[u]][w]) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if rec(k + 1, order, a, b, pa, pb, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    rec(0, &order, a, b, &pa, &pb, &mut map, &mut used).then_some(map)
}

/// The same graph with its coloring dropped.
pub fn uncolored(g: &ColoredIncidenceGraph) -> ColoredIncidenceGraph {
    ColoredIncidenceGraph {
        blocks: vec![],
        ..g.clone()
    }
}

/// Hexagon vertices in cyclic order: e1, d12, e2, d23, e3, d13.
pub fn hexagon_vertices(lat: &PicardLattice) -> Result<Vec<LatticeClass>, GraphError> {
    if lat.degree() != 6 {
        return Err(LatticeError::UnsupportedDegree(lat.degree()).into());
    }
    let v = |a: [i64; 4]| LatticeClass(a.to_vec());
    Ok(vec![
        v([0, 1, 0, 0]),
        v([1, -1, -1, 0]),
        v([0, 0, 1, 0]),
        v([1, 0, -1, -1]),
        v([0, 0, 0, 1]),
        v([1, -1, 0, -1]),
    ])
}

/// r^k (reflect = false) or r^k s (reflect = true) on hexagon positions, where r is
/// the rotation i ↦ i + 1 and s the edge reflection i ↦ 1 − i.
pub fn hexagon_element(k: usize, reflect: bool) -> Vec<usize> {
    (0..6)
        .map(|i| {
            let base = if reflect { (7 - i) % 6 } else { i };
            (base + k) % 6
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HexPattern {
    /// P²_R(3,0): every line real.
    Split,
    /// Q_{2,2}(0,1): antipodal pairs.
    FigA,
    /// P²_R(1,1): reflection fixing e1 and d23.
    FigB,
    /// Q_{3,1}(0,1): reflection without fixed lines.
    FigC,
}

impl HexPattern {
    pub const ALL: [HexPattern; 4] = [HexPattern::Split, HexPattern::FigA, HexPattern::FigB, HexPattern::FigC];

    pub fn parse(s: &str) -> Option<HexPattern> {
        match s {
            "split" => Some(HexPattern::Split),
            "fig_a" => Some(HexPattern::FigA),
            "fig_b" => Some(HexPattern::FigB),
            "fig_c" => Some(HexPattern::FigC),
            _ => None,
        }
    }

    pub fn sigma(self) -> Vec<usize> {
        match self {
            HexPattern::Split => hexagon_element(0, false),
            HexPattern::FigA => hexagon_element(3, false),
            // i ↦ −i = r^{-1}s
            HexPattern::FigB => hexagon_element(5, true),
            HexPattern::FigC => hexagon_element(0, true),
        }
    }
}

/// Lifts a permutation of hexagon positions to an isometry of the degree 6 lattice.
pub fn hexagon_isometry(lat: &PicardLattice, perm: &[usize]) -> Result<Isometry, WeylError> {
    let verts = hexagon_vertices(lat).map_err(|_| WeylError::Lattice(LatticeError::UnsupportedDegree(lat.degree())))?;
    let mut src = verts.clone();
    let mut dst: Vec<LatticeClass> = perm.iter().map(|&j| verts[j].clone()).collect();
    src.push(lat.canonical());
    dst.push(lat.canonical());
    Isometry::from_images(lat, &src, &dst)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexSubgroup {
    pub name: String,
    pub order: usize,
    pub elements: Vec<Vec<usize>>,
}

fn pow_name(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "r".into(),
        _ => format!("r^{}", k),
    }
}

/// `<r^m, r^j s>` with r^m generating the rotations and j as small as possible.
fn hex_name(elements: &BTreeSet<Vec<usize>>) -> String {
    let mut rot_step = 6;
    let mut refl_shift = None;
    for k in 0..6 {
        if k > 0 && elements.contains(&hexagon_element(k, false)) && rot_step == 6 {
            rot_step = k;
        }
        if refl_shift.is_none() && elements.contains(&hexagon_element(k, true)) {
            refl_shift = Some(k);
        }
    }
    let mut parts = Vec::new();
    if rot_step < 6 {
        parts.push(pow_name(rot_step));
    }
    if let Some(j) = refl_shift {
        parts.push(format!("{}s", pow_name(j)));
    }
    if parts.is_empty() {
        "1".into()
    } else {
        format!("<{}>", parts.join(","))
    }
}

fn all_hexagon_subgroups() -> Vec<BTreeSet<Vec<usize>>> {
    let elems: Vec<Vec<usize>> = (0..6)
        .flat_map(|k| [hexagon_element(k, false), hexagon_element(k, true)])
        .collect();
    let mut subs = BTreeSet::new();
    for a in &elems {
        for b in &elems {
            subs.insert(perm_closure(&[a.clone(), b.clone()], 6));
        }
    }
    subs.into_iter().collect()
}

fn has_disjoint_orbit(group: &BTreeSet<Vec<usize>>) -> bool {
    // consecutive positions meet, everything else is disjoint
    let adjacent = |a: usize, b: usize| (a + 1) % 6 == b || (b + 1) % 6 == a;
    let mut seen = [false; 6];
    for i in 0..6 {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<usize> = group.iter().map(|p| p[i]).collect();
        for &j in &orbit {
            seen[j] = true;
        }
        if orbit.iter().all(|&a| orbit.iter().all(|&b| !adjacent(a, b))) {
            return true;
        }
    }
    false
}

/// Subgroups of D_6 compatible with the real structure (every element commutes with σ)
/// such that the group together with σ leaves no disjoint orbit; one representative per
/// conjugacy class under the centralizer of σ.
pub fn hexagon_minimal_subgroups(pattern: HexPattern) -> Vec<HexSubgroup> {
    let sigma = pattern.sigma();
    let commutes = |p: &Vec<usize>| perm_compose(p, &sigma) == perm_compose(&sigma, p);
    let centralizer: Vec<Vec<usize>> = (0..6)
        .flat_map(|k| [hexagon_element(k, false), hexagon_element(k, true)])
        .filter(|p| commutes(p))
        .collect();
    let mut classes: BTreeMap<BTreeSet<Vec<usize>>, BTreeSet<Vec<usize>>> = BTreeMap::new();
    for h in all_hexagon_subgroups() {
        if !h.iter().all(&commutes) {
            continue;
        }
        let mut gens: Vec<Vec<usize>> = h.iter().cloned().collect();
        gens.push(sigma.clone());
        if has_disjoint_orbit(&perm_closure(&gens, 6)) {
            continue;
        }
        // canonical representative: smallest name among conjugates
        let conjugates: Vec<BTreeSet<Vec<usize>>> = centralizer
            .iter()
            .map(|c| {
                let inv = {
                    let mut inv = vec![0; 6];
                    for (i, &j) in c.iter().enumerate() {
                        inv[j] = i;
                    }
                    inv
                };
                h.iter().map(|p| perm_compose(c, &perm_compose(p, &inv))).collect()
            })
            .collect();
        let rep = conjugates.iter().min_by_key(|s| (hex_name(s), (*s).clone())).unwrap().clone();
        classes.entry(rep.clone()).or_insert(rep);
    }
    let mut out: Vec<HexSubgroup> = classes
        .into_values()
        .map(|s| HexSubgroup {
            name: hex_name(&s),
            order: s.len(),
            elements: s.into_iter().collect(),
        })
        .collect();
    out.sort_by(|a, b| (a.order, &a.name).cmp(&(b.order, &b.name)));
    out
}

/// The same question answered on the lattice: true when the lifted group with σ has no
/// contractible invariant set.
pub fn hexagon_minimal_by_lattice(elements: &[Vec<usize>], pattern: HexPattern) -> bool {
    let lat = PicardLattice::new(6).expect("degree 6 lattice");
    let mut gens: Vec<Isometry> = elements
        .iter()
        .map(|p| hexagon_isometry(&lat, p).expect("hexagon symmetry lifts"))
        .collect();
    let sigma = hexagon_isometry(&lat, &pattern.sigma()).expect("hexagon symmetry lifts");
    gens.push(sigma.clone());
    let grp = close_group(&lat, &gens, 64).expect("subgroup of D_6");
    let ctx = ActionContext::new(lat, grp, Some(sigma)).expect("sigma in group");
    find_contractible_set(&ctx).is_none()
}
