//! Lamplighter-group and Diestel-Leader arithmetic, and finite windows of
//! their Cayley/horocyclic-product graphs.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, LabelGraph};

/// Default bound on the number of window vertices.
pub const DEFAULT_WINDOW_BUDGET: usize = 1 << 20;

/// Generator edge indices in [`lamplighter_labels`].
pub const GEN_A: usize = 0;
pub const GEN_A_INV: usize = 1;
pub const GEN_B: usize = 2;
pub const GEN_B_INV: usize = 3;

/// A lamplighter or DL(p,q) element: a marker height and finitely many
/// nonzero digits. Digit `k` sits at the half-integer position k + 1/2;
/// digits at positions above the marker (k ≥ marker) lie in 0..p, those
/// below in 0..q.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupPoint {
    pub marker: i64,
    pub digits: BTreeMap<i64, u8>,
    pub p: u8,
    pub q: u8,
}

impl GroupPoint {
    pub fn identity() -> Self {
        Self::dl_identity(2, 2)
    }

    pub fn dl_identity(p: u8, q: u8) -> Self {
        GroupPoint { marker: 0, digits: BTreeMap::new(), p, q }
    }

    pub fn is_lamplighter(&self) -> bool {
        self.p == 2 && self.q == 2
    }

    pub fn height(&self) -> i64 {
        self.marker
    }

    pub fn digit(&self, k: i64) -> u8 {
        self.digits.get(&k).copied().unwrap_or(0)
    }

    pub fn set_digit(&mut self, k: i64, d: u8) {
        if d == 0 {
            self.digits.remove(&k);
        } else {
            self.digits.insert(k, d);
        }
    }

    /// Lamplighter element from lamp positions and marker.
    pub fn from_lamps(marker: i64, lamps: impl IntoIterator<Item = i64>) -> Self {
        let mut g = Self::identity();
        g.marker = marker;
        for k in lamps {
            let d = g.digit(k);
            g.set_digit(k, d ^ 1);
        }
        g
    }

    pub fn lamps(&self) -> Vec<i64> {
        self.digits.keys().copied().collect()
    }

    /// Right multiplication by a lamplighter generator (index as in
    /// [`lamplighter_labels`]).
    pub fn mul_gen(&self, gen: usize) -> GroupPoint {
        let mut g = self.clone();
        let n = g.marker;
        match gen {
            GEN_A => g.marker += 1,
            GEN_A_INV => g.marker -= 1,
            GEN_B => {
                g.set_digit(n, g.digit(n) ^ 1);
                g.marker += 1;
            }
            GEN_B_INV => {
                g.set_digit(n - 1, g.digit(n - 1) ^ 1);
                g.marker -= 1;
            }
            _ => panic!("generator index {gen} out of range"),
        }
        g
    }

    /// DL move up: the digit just above the marker becomes `j` and the
    /// marker rises by one.
    pub fn up(&self, j: u8) -> GroupPoint {
        let mut g = self.clone();
        g.set_digit(g.marker, j);
        g.marker += 1;
        g
    }

    /// DL move down: the digit just below the marker becomes `i` and the
    /// marker drops by one.
    pub fn down(&self, i: u8) -> GroupPoint {
        let mut g = self.clone();
        g.set_digit(g.marker - 1, i);
        g.marker -= 1;
        g
    }

    /// Group product `(r,m)·(s,n) = (t, m+n)` with `t_k = r_k + s_{k−m}`.
    /// Defined for p = q (the group case).
    pub fn multiply(&self, other: &GroupPoint) -> Result<GroupPoint> {
        if (self.p, self.q) != (other.p, other.q) {
            return Err(Error::ParamMismatch(format!("DL({},{}) times DL({},{})", self.p, self.q, other.p, other.q)));
        }
        if self.p != self.q {
            return Err(Error::ParamMismatch(format!("DL({},{}) is not a group", self.p, self.q)));
        }
        let mut t = self.clone();
        for (&k, &d) in &other.digits {
            let pos = k + self.marker;
            t.set_digit(pos, (t.digit(pos) + d) % self.p);
        }
        t.marker += other.marker;
        Ok(t)
    }

    pub fn inverse(&self) -> Result<GroupPoint> {
        if self.p != self.q {
            return Err(Error::ParamMismatch(format!("DL({},{}) is not a group", self.p, self.q)));
        }
        let mut t = Self::dl_identity(self.p, self.q);
        t.marker = -self.marker;
        for (&k, &d) in &self.digits {
            t.set_digit(k - self.marker, (self.p - d) % self.p);
        }
        Ok(t)
    }

    /// Parses the canonical form `(n; k1, k2)` or `(n; k1:d1, …)`.
    pub fn parse(s: &str, p: u8, q: u8) -> Result<GroupPoint> {
        let bad = || Error::InvalidToken(s.to_string());
        let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (n, rest) = inner.split_once(';').ok_or_else(bad)?;
        let mut g = Self::dl_identity(p, q);
        g.marker = n.trim().parse().map_err(|_| bad())?;
        for item in rest.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, d) = match item.split_once(':') {
                Some((k, d)) => (k.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
                None => (item.parse().map_err(|_| bad())?, 1u8),
            };
            g.set_digit(k, d);
        }
        Ok(g)
    }
}

impl fmt::Display for GroupPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.marker)?;
        for (i, (k, d)) in self.digits.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            if self.is_lamplighter() {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}:{d}")?;
            }
        }
        f.write_str(")")
    }
}

/// One step of a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Gen(usize),
    Up(u8),
    Down(u8),
}

/// Parses generator words: `a A b B` for the lamplighter group, `u<j>` and
/// `d<i>` for DL moves. Whitespace is ignored.
pub fn parse_word(w: &str) -> Result<Vec<Step>> {
    let chars: Vec<char> = w.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        i += 1;
        match c {
            'a' => out.push(Step::Gen(GEN_A)),
            'A' => out.push(Step::Gen(GEN_A_INV)),
            'b' => out.push(Step::Gen(GEN_B)),
            'B' => out.push(Step::Gen(GEN_B_INV)),
            'e' | '1' if out.is_empty() && chars.len() == 1 => {}
            'u' | 'd' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let num: String = chars[start..i].iter().collect();
                let v: u8 = num.parse().map_err(|_| Error::InvalidToken(format!("{c}{num}")))?;
                out.push(if c == 'u' { Step::Up(v) } else { Step::Down(v) });
            }
            c if c.is_whitespace() => {}
            c => return Err(Error::InvalidToken(c.to_string())),
        }
    }
    Ok(out)
}

/// Evaluates a word from the identity of DL(p,q) (the lamplighter group for
/// p = q = 2). The word `e` denotes the identity.
pub fn evaluate_word_dl(w: &str, p: u8, q: u8) -> Result<GroupPoint> {
    let mut g = GroupPoint::dl_identity(p, q);
    for s in parse_word(w)? {
        g = match s {
            Step::Gen(x) if p == 2 && q == 2 => g.mul_gen(x),
            Step::Gen(_) => return Err(Error::InvalidToken(format!("generator letters need DL(2,2), not DL({p},{q})"))),
            Step::Up(j) if j < q => g.up(j),
            Step::Down(i) if i < p => g.down(i),
            Step::Up(j) => return Err(Error::InvalidToken(format!("u{j}"))),
            Step::Down(i) => return Err(Error::InvalidToken(format!("d{i}"))),
        };
    }
    Ok(g)
}

pub fn evaluate_word(w: &str) -> Result<GroupPoint> {
    evaluate_word_dl(w, 2, 2)
}

/// Inverse word: reversed with each letter inverted.
pub fn invert_word(w: &str) -> String {
    w.chars()
        .rev()
        .map(|c| match c {
            'a' => 'A',
            'A' => 'a',
            'b' => 'B',
            'B' => 'b',
            c => c,
        })
        .collect()
}

/// Label graph of the lamplighter Cayley graph: one vertex, edges a, A, b, B.
pub fn lamplighter_labels() -> Arc<Graph> {
    let mut g = Graph::unoriented();
    g.add_vertex("*");
    g.add_edge_pair(0, 0, "a", "A");
    g.add_edge_pair(0, 0, "b", "B");
    Arc::new(g)
}

/// Label graph of DL(p,q): one vertex; the up edge (i,j) has index
/// 2(iq + j) and its reverse the next index.
pub fn dl_labels(p: u8, q: u8) -> Arc<Graph> {
    let mut g = Graph::unoriented();
    g.add_vertex("*");
    for i in 0..p {
        for j in 0..q {
            g.add_edge_pair(0, 0, format!("({i},{j})"), format!("({i},{j})'"));
        }
    }
    Arc::new(g)
}

/// Site of a sea-level grid point: bit i of `m` at position i + 1/2, bit i
/// of `n` at position −i − 1/2, marker 0.
pub fn sea_point(m: u64, n: u64) -> GroupPoint {
    let mut lamps = Vec::new();
    for i in 0..64 {
        if m >> i & 1 == 1 {
            lamps.push(i as i64);
        }
        if n >> i & 1 == 1 {
            lamps.push(-1 - i as i64);
        }
    }
    GroupPoint::from_lamps(0, lamps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowKind {
    Ball(usize),
    Tetra(i64, i64),
    Dl { p: u8, q: u8, lo: i64, hi: i64 },
}

/// A finite induced subgraph of the Cayley graph (or DL graph) whose
/// vertices are group points.
#[derive(Clone, Debug)]
pub struct Window {
    pub kind: WindowKind,
    pub points: Vec<GroupPoint>,
    pub index: HashMap<GroupPoint, usize>,
    pub graph: LabelGraph,
    pub p: u8,
    pub q: u8,
}

impl Window {
    fn build(kind: WindowKind, points: Vec<GroupPoint>, p: u8, q: u8) -> Window {
        let index: HashMap<GroupPoint, usize> = points.iter().cloned().enumerate().map(|(i, g)| (g, i)).collect();
        let lamplighter = !matches!(kind, WindowKind::Dl { .. });
        let labels = if lamplighter { lamplighter_labels() } else { dl_labels(p, q) };
        let mut graph = LabelGraph::unoriented(labels);
        for g in &points {
            graph.add_vertex(g.to_string(), 0);
        }
        for (u, g) in points.iter().enumerate() {
            if lamplighter {
                for gen in [GEN_A, GEN_B] {
                    if let Some(&v) = index.get(&g.mul_gen(gen)) {
                        let name = if gen == GEN_A { "a" } else { "b" };
                        graph.add_edge_pair(u, v, format!("{u}{name}"), format!("{v}{}", name.to_uppercase()), gen);
                    }
                }
            } else {
                let i = g.digit(g.marker);
                for j in 0..q {
                    if let Some(&v) = index.get(&g.up(j)) {
                        let l = 2 * (i as usize * q as usize + j as usize);
                        graph.add_edge_pair(u, v, format!("{u}u{j}"), format!("{v}d{i}"), l);
                    }
                }
            }
        }
        Window { kind, points, index, graph, p, q }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_lamplighter(&self) -> bool {
        !matches!(self.kind, WindowKind::Dl { .. })
    }

    pub fn vertex(&self, g: &GroupPoint) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Vertex of a generator word, if inside the window.
    pub fn vertex_of_word(&self, w: &str) -> Result<usize> {
        let g = evaluate_word_dl(w, self.p, self.q)?;
        self.vertex(&g).ok_or_else(|| Error::SeedOutside(format!("{w} = {g}")))
    }

    /// Endpoint of the label-`l` edge out of `g` in the infinite graph, if
    /// the label applies at `g`.
    pub fn apply_label(&self, g: &GroupPoint, l: usize) -> Option<GroupPoint> {
        if self.is_lamplighter() {
            return Some(g.mul_gen(l));
        }
        let q = self.q as usize;
        let (i, j) = (((l / 2) / q) as u8, ((l / 2) % q) as u8);
        if l % 2 == 0 {
            (g.digit(g.marker) == i).then(|| g.up(j))
        } else {
            (g.digit(g.marker - 1) == j).then(|| g.down(i))
        }
    }

    /// Whether vertex `u` has an `l`-neighbour in the infinite graph that
    /// lies outside the window.
    pub fn missing(&self, u: usize, l: usize) -> bool {
        match self.apply_label(&self.points[u], l) {
            Some(h) => !self.index.contains_key(&h),
            None => false,
        }
    }

    /// Neighbours of `g` in the infinite graph.
    pub fn infinite_neighbours(&self, g: &GroupPoint) -> Vec<GroupPoint> {
        (0..self.graph.target.nedges()).filter_map(|l| self.apply_label(g, l)).collect()
    }

    /// Vertices whose radius-`d` ball in the infinite graph lies inside the window.
    pub fn interior(&self, d: usize) -> Vec<usize> {
        (0..self.len())
            .filter(|&u| {
                let mut frontier = vec![self.points[u].clone()];
                for _ in 0..d {
                    let mut next = Vec::new();
                    for g in &frontier {
                        for h in self.infinite_neighbours(g) {
                            if !self.index.contains_key(&h) {
                                return false;
                            }
                            next.push(h);
                        }
                    }
                    next.sort();
                    next.dedup();
                    frontier = next;
                }
                true
            })
            .collect()
    }

    /// Complete height-1 cells {g, g·ab⁻¹, g·a, g·b} of a lamplighter
    /// window, each listed once (from the base with no lamp just above the marker).
    pub fn tetra_cells(&self) -> Vec<[usize; 4]> {
        if !self.is_lamplighter() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (u, g) in self.points.iter().enumerate() {
            if g.digit(g.marker) != 0 {
                continue;
            }
            if let Some(c) = self.cell_from(u) {
                out.push(c);
            }
        }
        out
    }

    fn cell_members(g: &GroupPoint) -> [GroupPoint; 4] {
        [g.clone(), g.mul_gen(GEN_A).mul_gen(GEN_B_INV), g.mul_gen(GEN_A), g.mul_gen(GEN_B)]
    }

    fn cell_from(&self, u: usize) -> Option<[usize; 4]> {
        let m = Self::cell_members(&self.points[u]);
        let mut c = [0; 4];
        for (k, h) in m.iter().enumerate() {
            c[k] = *self.index.get(h)?;
        }
        Some(c)
    }

    /// Whether the forward (a or b) edge `e` belongs to a complete cell.
    pub fn edge_in_complete_cell(&self, e: usize) -> bool {
        let u = self.graph.graph.tail(e);
        let mut base = self.points[u].clone();
        base.set_digit(base.marker, 0);
        Self::cell_members(&base).iter().all(|h| self.index.contains_key(h))
    }

    /// Complete DL cells: p lower vertices (digit i just above the marker)
    /// and q upper vertices (digit j just below the marker).
    pub fn dl_cells(&self) -> Vec<(Vec<usize>, Vec<usize>)> {
        if self.is_lamplighter() {
            return Vec::new();
        }
        let mut out = Vec::new();
        'pts: for g in &self.points {
            if g.digit(g.marker) != 0 {
                continue;
            }
            let mut lower = Vec::new();
            for i in 0..self.p {
                let mut h = g.clone();
                h.set_digit(h.marker, i);
                match self.index.get(&h) {
                    Some(&v) => lower.push(v),
                    None => continue 'pts,
                }
            }
            let mut upper = Vec::new();
            for j in 0..self.q {
                match self.index.get(&g.up(j)) {
                    Some(&v) => upper.push(v),
                    None => continue 'pts,
                }
            }
            out.push((lower, upper));
        }
        out
    }

    /// For DL(2,2) windows: the lamplighter generator of each DL label.
    pub fn collapse_label(&self, l: usize) -> Option<usize> {
        if self.is_lamplighter() || self.p != 2 || self.q != 2 {
            return None;
        }
        let (i, j) = ((l / 2) / 2, (l / 2) % 2);
        let up = l % 2 == 0;
        Some(match (i == j, up) {
            (true, true) => GEN_A,
            (true, false) => GEN_A_INV,
            (false, true) => GEN_B,
            (false, false) => GEN_B_INV,
        })
    }
}

/// Word-metric ball of radius `r` around the identity, in BFS order.
pub fn ball(r: usize) -> Result<Window> {
    ball_with_budget(r, DEFAULT_WINDOW_BUDGET)
}

pub fn ball_with_budget(r: usize, budget: usize) -> Result<Window> {
    let e = GroupPoint::identity();
    let mut dist = HashMap::new();
    dist.insert(e.clone(), 0usize);
    let mut points = vec![e.clone()];
    let mut queue = VecDeque::from([e]);
    while let Some(g) = queue.pop_front() {
        let d = dist[&g];
        if d == r {
            continue;
        }
        for gen in [GEN_A, GEN_A_INV, GEN_B, GEN_B_INV] {
            let h = g.mul_gen(gen);
            if !dist.contains_key(&h) {
                if points.len() >= budget {
                    return Err(Error::capacity(format!("ball({r}) vertices"), budget));
                }
                dist.insert(h.clone(), d + 1);
                points.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(Window::build(WindowKind::Ball(r), points, 2, 2))
}

/// All (s, n) with lo ≤ n ≤ hi and lamps at positions strictly between lo and hi.
pub fn tetrahedron(lo: i64, hi: i64) -> Result<Window> {
    if lo > hi {
        return Err(Error::Invalid(format!("tetrahedron needs lo <= hi, got {lo} > {hi}")));
    }
    let width = (hi - lo) as u32;
    let count = (width as u128 + 1) << width.min(100);
    if width > 40 || count > DEFAULT_WINDOW_BUDGET as u128 {
        return Err(Error::capacity(format!("tetrahedron({lo},{hi}) vertices"), DEFAULT_WINDOW_BUDGET));
    }
    let mut points = Vec::with_capacity(count as usize);
    for n in lo..=hi {
        for mask in 0u64..(1u64 << width) {
            points.push(GroupPoint::from_lamps(n, (0..width as i64).filter(|i| mask >> i & 1 == 1).map(|i| lo + i)));
        }
    }
    Ok(Window::build(WindowKind::Tetra(lo, hi), points, 2, 2))
}

/// DL(p,q) window: marker in [lo, hi], digits supported in positions
/// strictly between lo and hi.
pub fn dl_window(p: u8, q: u8, lo: i64, hi: i64) -> Result<Window> {
    if p < 2 || q < 2 {
        return Err(Error::Invalid(format!("DL({p},{q}) needs p, q >= 2")));
    }
    if lo > hi {
        return Err(Error::Invalid(format!("DL window needs lo <= hi, got {lo} > {hi}")));
    }
    let mut count: u128 = 0;
    for n in lo..=hi {
        count += (q as u128).pow((n - lo) as u32) * (p as u128).pow((hi - n) as u32);
        if count > DEFAULT_WINDOW_BUDGET as u128 {
            return Err(Error::capacity(format!("DL({p},{q}) window vertices"), DEFAULT_WINDOW_BUDGET));
        }
    }
    let mut points = Vec::with_capacity(count as usize);
    for n in lo..=hi {
        let bases: Vec<u8> = (lo..hi).map(|k| if k < n { q } else { p }).collect();
        let mut digits = vec![0u8; bases.len()];
        loop {
            let mut g = GroupPoint::dl_identity(p, q);
            g.marker = n;
            for (i, &d) in digits.iter().enumerate() {
                g.set_digit(lo + i as i64, d);
            }
            points.push(g);
            let mut k = digits.len();
            let mut more = false;
            while k > 0 {
                k -= 1;
                digits[k] += 1;
                if digits[k] < bases[k] {
                    more = true;
                    break;
                }
                digits[k] = 0;
            }
            if !more {
                break;
            }
        }
    }
    Ok(Window::build(WindowKind::Dl { p, q, lo, hi }, points, p, q))
}

/// Parses `ball:<r>`, `tetra:<lo>:<hi>` or `dl:<p>:<q>:<lo>:<hi>`.
pub fn parse_window(spec: &str) -> Result<Window> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| -> Result<i64> { s.parse().map_err(|_| Error::InvalidToken(spec.to_string())) };
    match parts.as_slice() {
        ["ball", r] => ball(num(r)?.max(0) as usize),
        ["tetra", lo, hi] => tetrahedron(num(lo)?, num(hi)?),
        ["dl", p, q, lo, hi] => dl_window(num(p)? as u8, num(q)? as u8, num(lo)?, num(hi)?),
        _ => Err(Error::InvalidToken(spec.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words() {
        assert_eq!(evaluate_word("aA").unwrap(), GroupPoint::identity());
        let ab = evaluate_word("ab").unwrap();
        assert_eq!(ab, GroupPoint::from_lamps(2, [1]));
        assert_eq!(ab.height(), 2);
        assert_eq!(evaluate_word("aBaB").unwrap(), GroupPoint::identity());
        assert!(matches!(evaluate_word("ax"), Err(Error::InvalidToken(_))));
    }

    #[test]
    fn relations() {
        for n in 1..=5 {
            let w = format!("{}{}", "a".repeat(n), "B".repeat(n)).repeat(2);
            assert_eq!(evaluate_word(&w).unwrap(), GroupPoint::identity());
        }
    }

    #[test]
    fn product_formula() {
        let b = evaluate_word("b").unwrap();
        assert_eq!(b.multiply(&b).unwrap(), GroupPoint::from_lamps(2, [0, 1]));
        let g = evaluate_word("abBBa").unwrap();
        assert_eq!(g.multiply(&GroupPoint::identity()).unwrap(), g);
        assert_eq!(g.multiply(&g.inverse().unwrap()).unwrap(), GroupPoint::identity());
        let dl = GroupPoint::dl_identity(2, 3);
        assert!(matches!(dl.multiply(&dl), Err(Error::ParamMismatch(_))));
    }

    #[test]
    fn display_and_parse() {
        let g = GroupPoint::from_lamps(0, [0]);
        assert_eq!(g.to_string(), "(0; 0)");
        assert_eq!(GroupPoint::identity().to_string(), "(0;)");
        let h = evaluate_word("bBBa").unwrap();
        assert_eq!(GroupPoint::parse(&h.to_string(), 2, 2).unwrap(), h);
        let d = evaluate_word_dl("u2u1d1", 2, 3).unwrap();
        assert_eq!(d.to_string(), "(1; 0:2, 1:1)");
        assert_eq!(GroupPoint::parse(&d.to_string(), 2, 3).unwrap(), d);
    }

    #[test]
    fn small_balls() {
        assert_eq!(ball(0).unwrap().len(), 1);
        assert_eq!(ball(0).unwrap().graph.nedges(), 0);
        assert_eq!(ball(1).unwrap().len(), 5);
        assert_eq!(ball(3).unwrap().len(), 39);
    }

    #[test]
    fn tetra_counts() {
        for h in 0..=6 {
            assert_eq!(tetrahedron(0, h).unwrap().len() as i64, (h + 1) << h);
        }
        assert_eq!(tetrahedron(-2, 2).unwrap().len(), 80);
        let t = tetrahedron(0, 2).unwrap();
        assert_eq!(t.tetra_cells().len(), 4);
    }

    #[test]
    fn dl_counts() {
        assert_eq!(dl_window(2, 3, 0, 3).unwrap().len(), 65);
        assert_eq!(dl_window(2, 2, 0, 3).unwrap().len(), tetrahedron(0, 3).unwrap().len());
        let w = dl_window(2, 3, 0, 2).unwrap();
        for (lower, upper) in w.dl_cells() {
            assert_eq!(lower.len() + upper.len(), 5);
        }
    }

    #[test]
    fn window_graph_valid() {
        for w in [ball(3).unwrap(), tetrahedron(-1, 2).unwrap(), dl_window(2, 3, 0, 2).unwrap()] {
            w.graph.validate().unwrap();
        }
    }

    #[test]
    fn interior_of_tetra() {
        let t = tetrahedron(-3, 3).unwrap();
        let inner = t.interior(2);
        assert!(inner.iter().all(|&u| t.points[u].marker.abs() <= 1));
        assert!(inner.contains(&t.vertex(&GroupPoint::identity()).unwrap()));
    }
}
