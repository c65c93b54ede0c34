//! CNF encoding of finite-window tiling problems, solving, enumeration and
//! forced-value queries.

use std::collections::BTreeMap;

use super::solver::{Lit, SolveResult, Solver};
use crate::error::{Error, Result};
use crate::lamplighter::Window;
use crate::tiles::{Constraint, Seed, Tileset};

/// Tile counts up to this size use pairwise at-most-one clauses.
pub const PAIRWISE_MAX: usize = 8;

/// A CNF whose first `nvertices · ntiles` variables are the vertex-tile
/// indicators: variable v·ntiles + t + 1 means "vertex v carries tile t".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnfInstance {
    pub nvars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub nvertices: usize,
    pub ntiles: usize,
    pub vertex_names: Vec<String>,
    pub tile_names: Vec<String>,
}

impl CnfInstance {
    pub fn var(&self, v: usize, t: usize) -> i32 {
        (v * self.ntiles + t + 1) as i32
    }

    /// Inverse of [`CnfInstance::var`] on indicator variables.
    pub fn var_info(&self, var: i32) -> Option<(usize, usize)> {
        let x = var.checked_sub(1)? as usize;
        (var > 0 && x < self.nvertices * self.ntiles).then(|| (x / self.ntiles, x % self.ntiles))
    }

    /// Tile per vertex from a model (0-based variable order).
    pub fn decode(&self, model: &[bool]) -> Result<Vec<usize>> {
        (0..self.nvertices)
            .map(|v| {
                let on: Vec<usize> = (0..self.ntiles).filter(|&t| model.get(v * self.ntiles + t) == Some(&true)).collect();
                match on.as_slice() {
                    [t] => Ok(*t),
                    _ => Err(Error::Invalid(format!("model gives vertex {} {} tiles", self.vertex_names[v], on.len()))),
                }
            })
            .collect()
    }

    pub fn solver(&self) -> Solver {
        let mut s = Solver::new(self.nvars);
        for c in &self.clauses {
            s.add_clause(c);
        }
        s
    }
}

struct Builder {
    nvars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Builder {
    fn fresh(&mut self) -> i32 {
        self.nvars += 1;
        self.nvars as i32
    }

    fn exactly_one(&mut self, xs: &[i32]) {
        self.clauses.push(xs.to_vec());
        if xs.len() <= PAIRWISE_MAX {
            for i in 0..xs.len() {
                for j in i + 1..xs.len() {
                    self.clauses.push(vec![-xs[i], -xs[j]]);
                }
            }
            return;
        }
        // sequential ladder: s_i means "some of x_0..x_i is true"
        let n = xs.len();
        let s: Vec<i32> = (0..n - 1).map(|_| self.fresh()).collect();
        self.clauses.push(vec![-xs[0], s[0]]);
        for i in 1..n - 1 {
            self.clauses.push(vec![-xs[i], s[i]]);
            self.clauses.push(vec![-s[i - 1], s[i]]);
            self.clauses.push(vec![-xs[i], -s[i - 1]]);
        }
        self.clauses.push(vec![-xs[n - 1], -s[n - 2]]);
    }
}

/// Resolves seed words to window vertices.
pub fn resolve_seeds(w: &Window, seeds: &[Seed]) -> Result<Vec<(usize, usize)>> {
    seeds.iter().map(|s| Ok((w.vertex_of_word(&s.word)?, s.tile))).collect()
}

/// Encodes the tiling problem of `ts` on `w`, with the tileset's own seeds
/// plus `seeds`.
pub fn encode(w: &Window, ts: &Tileset, seeds: &[Seed]) -> Result<CnfInstance> {
    let mut all: Vec<Seed> = ts.seeds().to_vec();
    all.extend(seeds.iter().cloned());
    let pins = resolve_seeds(w, &all)?;
    let d = ts.ntiles();
    if let Some(s) = all.iter().find(|s| s.tile >= d) {
        return Err(Error::UnknownName(format!("tile {}", s.tile)));
    }
    let n = w.len();
    let var = |v: usize, t: usize| (v * d + t + 1) as i32;
    let mut b = Builder { nvars: n * d, clauses: Vec::new() };
    for v in 0..n {
        let xs: Vec<i32> = (0..d).map(|t| var(v, t)).collect();
        b.exactly_one(&xs);
    }
    for c in ts.constraints(w)? {
        match c {
            Constraint::Ray { lower, upper } => {
                let top = |v: usize| var(v, 1);
                for &l in &lower {
                    for &u in &upper {
                        b.clauses.push(vec![-top(l), top(u)]);
                    }
                }
                for &u in &upper {
                    let mut c = vec![-top(u)];
                    c.extend(lower.iter().map(|&l| top(l)));
                    b.clauses.push(c);
                    for i in 0..lower.len() {
                        for j in i + 1..lower.len() {
                            b.clauses.push(vec![-top(u), -top(lower[i]), -top(lower[j])]);
                        }
                    }
                }
            }
            Constraint::Table { scope, allowed } => encode_table(&mut b, &scope, &allowed, d, var),
        }
    }
    for (v, t) in pins {
        b.clauses.push(vec![var(v, t)]);
    }
    Ok(CnfInstance {
        nvars: b.nvars,
        clauses: b.clauses,
        nvertices: n,
        ntiles: d,
        vertex_names: w.points.iter().map(|g| g.to_string()).collect(),
        tile_names: (0..d).map(|t| ts.tile_name(t)).collect(),
    })
}

fn encode_table(b: &mut Builder, scope: &[usize], allowed: &[Vec<usize>], d: usize, var: impl Fn(usize, usize) -> i32) {
    let k = scope.len();
    // scopes that repeat a vertex only admit rows agreeing on the repeats
    let rows: Vec<&Vec<usize>> = allowed.iter().filter(|r| (0..k).all(|i| (0..k).all(|j| scope[i] != scope[j] || r[i] == r[j]))).collect();
    if k == 1 || (k == 2 && scope[0] == scope[1]) {
        for t in 0..d {
            if !rows.iter().any(|r| r[0] == t) {
                b.clauses.push(vec![-var(scope[0], t)]);
            }
        }
        return;
    }
    if k == 2 {
        // support encoding in both directions
        for (i, j) in [(0, 1), (1, 0)] {
            for t in 0..d {
                let mut c = vec![-var(scope[i], t)];
                let mut sup: Vec<usize> = rows.iter().filter(|r| r[i] == t).map(|r| r[j]).collect();
                sup.sort();
                sup.dedup();
                c.extend(sup.iter().map(|&u| var(scope[j], u)));
                b.clauses.push(c);
            }
        }
        return;
    }
    let blocking = (d as u128).pow(k as u32) - rows.len() as u128;
    let tuple = (rows.len() * (k + 1) + k * d + 1) as u128;
    if blocking <= tuple {
        let mut t = vec![0usize; k];
        loop {
            if !rows.iter().any(|r| **r == t) {
                b.clauses.push((0..k).map(|i| -var(scope[i], t[i])).collect());
            }
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                t[i] += 1;
                if t[i] < d {
                    break;
                }
                t[i] = 0;
            }
        }
    }
    let tv: Vec<i32> = rows.iter().map(|_| b.fresh()).collect();
    b.clauses.push(tv.clone());
    for (r, &x) in rows.iter().zip(&tv) {
        for i in 0..k {
            b.clauses.push(vec![-x, var(scope[i], r[i])]);
        }
    }
    for i in 0..k {
        for t in 0..d {
            let mut c = vec![-var(scope[i], t)];
            c.extend(rows.iter().zip(&tv).filter(|(r, _)| r[i] == t).map(|(_, &x)| x));
            b.clauses.push(c);
        }
    }
}

/// A satisfying tiling, or None when UNSAT.
pub fn solve(cnf: &CnfInstance) -> Result<Option<Vec<usize>>> {
    match cnf.solver().solve() {
        SolveResult::Sat(m) => Ok(Some(cnf.decode(&m)?)),
        _ => Ok(None),
    }
}

/// All tilings, in sorted order. More than `limit` solutions is a capacity
/// error, distinct from an empty (UNSAT) result.
pub fn enumerate(cnf: &CnfInstance, limit: usize) -> Result<Vec<Vec<usize>>> {
    let mut s = cnf.solver();
    let mut out = Vec::new();
    while let SolveResult::Sat(m) = s.solve() {
        let x = cnf.decode(&m)?;
        if out.len() == limit {
            return Err(Error::capacity("solution enumeration", limit));
        }
        let block: Vec<i32> = x.iter().enumerate().map(|(v, &t)| -cnf.var(v, t)).collect();
        out.push(x);
        if !s.add_clause(&block) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Distinct images of the tilings under a per-tile projection, in sorted
/// order; each found image is blocked as a whole. More than `limit` images
/// is a capacity error.
pub fn enumerate_projected(cnf: &CnfInstance, proj: impl Fn(usize) -> usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    let mut s = cnf.solver();
    let mut out = Vec::new();
    while let SolveResult::Sat(m) = s.solve() {
        let y: Vec<usize> = cnf.decode(&m)?.into_iter().map(&proj).collect();
        if out.len() == limit {
            return Err(Error::capacity("projected enumeration", limit));
        }
        let mut block = Vec::new();
        for (v, &yv) in y.iter().enumerate() {
            block.extend((0..cnf.ntiles).filter(|&t| proj(t) != yv).map(|t| cnf.var(v, t)));
        }
        out.push(y);
        if !s.add_clause(&block) {
            break;
        }
    }
    out.sort();
    Ok(out)
}

/// Number of tilings, counted by enumeration.
pub fn count(cnf: &CnfInstance, limit: usize) -> Result<usize> {
    enumerate(cnf, limit).map(|v| v.len())
}

/// For each listed vertex, the tiles it carries in some solution. An UNSAT
/// instance gives empty sets.
pub fn feasible_tiles(cnf: &CnfInstance, vertices: &[usize]) -> Result<BTreeMap<usize, Vec<usize>>> {
    let d = cnf.ntiles;
    let mut s = cnf.solver();
    let mut known = vec![vec![false; d]; cnf.nvertices];
    let mut out: BTreeMap<usize, Vec<usize>> = vertices.iter().map(|&v| (v, Vec::new())).collect();
    let SolveResult::Sat(m) = s.solve() else {
        return Ok(out);
    };
    let harvest = |known: &mut Vec<Vec<bool>>, m: &[bool]| -> Result<()> {
        for (v, t) in cnf.decode(m)?.into_iter().enumerate() {
            known[v][t] = true;
        }
        Ok(())
    };
    harvest(&mut known, &m)?;
    for &v in vertices {
        for t in 0..d {
            if known[v][t] {
                continue;
            }
            if let SolveResult::Sat(m) = s.solve_with(&[Lit::from_dimacs(cnf.var(v, t))]) {
                harvest(&mut known, &m)?;
            }
        }
    }
    for (v, tiles) in out.iter_mut() {
        *tiles = (0..d).filter(|&t| known[*v][t]).collect();
    }
    Ok(out)
}

/// Feasible tiles at every vertex whose radius-`depth` ball lies in the window.
pub fn forced_values(w: &Window, ts: &Tileset, seeds: &[Seed], depth: usize) -> Result<BTreeMap<usize, Vec<usize>>> {
    let cnf = encode(w, ts, seeds)?;
    feasible_tiles(&cnf, &w.interior(depth))
}

/// Checks a tiling against the raw rules and the seeds, independently of
/// the CNF.
pub fn validate(w: &Window, ts: &Tileset, seeds: &[Seed], x: &[usize]) -> Result<Vec<String>> {
    let mut v = ts.violations(w, x);
    let mut all: Vec<Seed> = ts.seeds().to_vec();
    all.extend(seeds.iter().cloned());
    for (u, t) in resolve_seeds(w, &all)? {
        if x.get(u) != Some(&t) {
            v.push(format!("seed at {} wants tile {}", w.points[u], ts.tile_name(t)));
        }
    }
    Ok(v)
}

/// Solution dump: one `<point> <tile-id>` line per vertex, sorted.
pub fn dump_solution(w: &Window, x: &[usize]) -> String {
    let mut lines: Vec<String> = w.points.iter().zip(x).map(|(g, t)| format!("{g} {t}")).collect();
    lines.sort();
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

/// Parses a solution dump back into a tiling of `w`.
pub fn parse_solution(w: &Window, text: &str) -> Result<Vec<usize>> {
    let mut x = vec![None; w.len()];
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let (p, t) = line.rsplit_once(' ').ok_or_else(|| Error::parse(i + 1, "expected `<point> <tile-id>`"))?;
        let g = crate::lamplighter::GroupPoint::parse(p, w.p, w.q).map_err(|_| Error::parse(i + 1, format!("bad point `{p}`")))?;
        let v = w.vertex(&g).ok_or_else(|| Error::parse(i + 1, format!("point {p} is outside the window")))?;
        let t: usize = t.parse().map_err(|_| Error::parse(i + 1, format!("bad tile id `{t}`")))?;
        x[v] = Some(t);
    }
    x.into_iter().enumerate().map(|(v, t)| t.ok_or_else(|| Error::Invalid(format!("no tile for {}", w.points[v])))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{count_homs, LabelGraph};
    use crate::lamplighter::{ball, tetrahedron};
    use crate::tiles::builtin::{self, TAS, TBS, TDS};
    use crate::tiles::{DhsTarget, TetraSystem, WangTileset};

    fn seed(word: &str, tile: usize) -> Seed {
        Seed { word: word.into(), tile }
    }

    #[test]
    fn single_vertex_clause_counts() {
        let w = ball(0).unwrap();
        for k in 1..=8 {
            let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
            let ts = Tileset::Tetra(TetraSystem::new(names, vec![], true).unwrap().0);
            let cnf = encode(&w, &ts, &[]).unwrap();
            assert_eq!(cnf.nvars, k);
            assert_eq!(cnf.clauses.len(), 1 + k * (k - 1) / 2);
            assert_eq!(enumerate(&cnf, 100).unwrap().len(), k);
        }
        let names: Vec<String> = (0..20).map(|i| i.to_string()).collect();
        let ts = Tileset::Tetra(TetraSystem::new(names, vec![], true).unwrap().0);
        assert_eq!(enumerate(&encode(&w, &ts, &[]).unwrap(), 100).unwrap().len(), 20);
    }

    #[test]
    fn comb_seeded_is_sat_and_valid() {
        let w = ball(2).unwrap();
        let ts = Tileset::Wang(builtin::comb());
        let seeds = [seed("e", TAS)];
        let x = solve(&encode(&w, &ts, &seeds).unwrap()).unwrap().unwrap();
        assert!(validate(&w, &ts, &seeds, &x).unwrap().is_empty());
    }

    #[test]
    fn comb_forced_small() {
        let w = ball(4).unwrap();
        let ts = Tileset::Wang(builtin::comb());
        let seeds = [seed("e", TAS)];
        let cnf = encode(&w, &ts, &seeds).unwrap();
        let vs: Vec<usize> = ["aa", "b", "aB"].iter().map(|s| w.vertex_of_word(s).unwrap()).collect();
        let f = feasible_tiles(&cnf, &vs).unwrap();
        assert_eq!(f[&vs[0]], vec![TAS]);
        assert_eq!(f[&vs[1]], vec![TBS]);
        assert_eq!(f[&vs[2]], vec![TDS]);
    }

    #[test]
    fn seed_outside_window() {
        let w = ball(1).unwrap();
        let ts = Tileset::Wang(builtin::comb());
        assert!(matches!(encode(&w, &ts, &[seed("aa", 0)]), Err(Error::SeedOutside(_))));
    }

    #[test]
    fn counts_match_hom_enumeration() {
        // F: two vertices, a-loops everywhere, b-edges both ways between them
        let w = ball(2).unwrap();
        let target = w.graph.target.clone();
        let mut f = LabelGraph::unoriented(target);
        f.add_vertex("x", 0);
        f.add_vertex("y", 0);
        f.add_edge_pair(0, 0, "ax", "Ax", 0);
        f.add_edge_pair(1, 1, "ay", "Ay", 0);
        f.add_edge_pair(0, 1, "bxy", "Byx", 2);
        f.add_edge_pair(1, 0, "byx", "Bxy", 2);
        let n_sat = count(&encode(&w, &Tileset::Dhs(DhsTarget::new(f.clone())), &[]).unwrap(), 10_000).unwrap();
        assert_eq!(n_sat as u64, count_homs(&w.graph, &f).unwrap());
        assert!(n_sat > 0);
    }

    #[test]
    fn limit_is_distinct_from_unsat() {
        let w = ball(1).unwrap();
        let ts = Tileset::Wang(WangTileset::new(vec!["c".into()], vec![[0; 4], [0; 4]], vec!["x".into(), "y".into()]).unwrap());
        let cnf = encode(&w, &ts, &[]).unwrap();
        assert!(matches!(enumerate(&cnf, 10), Err(Error::Capacity { .. })));
        assert_eq!(enumerate(&cnf, 32).unwrap().len(), 32);
    }

    #[test]
    fn dump_round_trip() {
        let w = tetrahedron(0, 2).unwrap();
        let ts = Tileset::Tetra(builtin::ray_left());
        let x = solve(&encode(&w, &ts, &[seed("e", 1)]).unwrap()).unwrap().unwrap();
        assert_eq!(parse_solution(&w, &dump_solution(&w, &x)).unwrap(), x);
    }
}
