//! Tileset representations on lamplighter and DL windows, their finite
//! constraint semantics, conversions and a line-oriented file format.

pub mod builtin;
pub mod sft;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::LabelGraph;
use crate::lamplighter::{dl_labels, lamplighter_labels, Window, GEN_A, GEN_B};

/// Wang tile directions, in tuple order.
pub const DIR_A: usize = 0;
pub const DIR_B: usize = 1;
pub const DIR_A_INV: usize = 2;
pub const DIR_B_INV: usize = 3;

/// A tile pinned at the vertex reached by a generator word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub word: String,
    pub tile: usize,
}

/// Wang tiles over edge colours, each tile a colour per direction
/// (a, b, a⁻¹, b⁻¹).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WangTileset {
    pub colors: Vec<String>,
    pub tiles: Vec<[usize; 4]>,
    pub names: Vec<String>,
    pub seeds: Vec<Seed>,
}

impl WangTileset {
    pub fn new(colors: Vec<String>, tiles: Vec<[usize; 4]>, names: Vec<String>) -> Result<Self> {
        if names.len() != tiles.len() {
            return Err(Error::Invalid("one name per Wang tile required".into()));
        }
        if let Some(t) = tiles.iter().find(|t| t.iter().any(|&c| c >= colors.len())) {
            return Err(Error::Invalid(format!("Wang tile {t:?} uses an unknown colour")));
        }
        Ok(WangTileset { colors, tiles, names, seeds: Vec::new() })
    }

    /// Allowed (x, y) pairs along the `gen` edge x → x·gen (gen = a or b).
    pub fn pairs(&self, gen: usize) -> Vec<Vec<usize>> {
        let (fwd, back) = if gen == GEN_A { (DIR_A, DIR_A_INV) } else { (DIR_B, DIR_B_INV) };
        let mut out = Vec::new();
        for (x, s) in self.tiles.iter().enumerate() {
            for (y, t) in self.tiles.iter().enumerate() {
                if s[fwd] == t[back] {
                    out.push(vec![x, y]);
                }
            }
        }
        out
    }

    /// Whether every colour shown in one direction is matched by some tile
    /// in the opposite direction (so no tile is excluded by a lone edge).
    pub fn is_edge_complete(&self) -> bool {
        [(DIR_A, DIR_A_INV), (DIR_B, DIR_B_INV)].iter().all(|&(f, b)| {
            let fs: BTreeSet<usize> = self.tiles.iter().map(|t| t[f]).collect();
            let bs: BTreeSet<usize> = self.tiles.iter().map(|t| t[b]).collect();
            fs == bs
        })
    }
}

/// Tetrahedron tiling system: allowed symbol quadruples at (g, g·ab⁻¹, g·a, g·b).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TetraSystem {
    pub alphabet: Vec<String>,
    /// Sorted, duplicate-free, invariant under the swap (1,2)(3,4).
    pub allowed: Vec<[usize; 4]>,
    pub seeds: Vec<Seed>,
}

pub fn swap(t: &[usize; 4]) -> [usize; 4] {
    [t[1], t[0], t[3], t[2]]
}

impl TetraSystem {
    /// Builds a system, keeping only quadruples whose swap is also allowed
    /// (the rule at g·ab⁻¹ is the swapped rule at g). Returns the dropped
    /// quadruples; in strict mode any drop is an error.
    pub fn new(alphabet: Vec<String>, allowed: Vec<[usize; 4]>, strict: bool) -> Result<(Self, Vec<[usize; 4]>)> {
        if let Some(t) = allowed.iter().find(|t| t.iter().any(|&c| c >= alphabet.len())) {
            return Err(Error::Invalid(format!("quadruple {t:?} uses an unknown symbol")));
        }
        let set: BTreeSet<[usize; 4]> = allowed.into_iter().collect();
        let (keep, dropped): (Vec<[usize; 4]>, Vec<[usize; 4]>) = set.iter().partition(|t| set.contains(&swap(t)));
        if strict && !dropped.is_empty() {
            return Err(Error::Invalid(format!(
                "Θ is not closed under (1,2)(3,4): {} quadruple(s) lack their swap, e.g. {:?}",
                dropped.len(),
                dropped[0]
            )));
        }
        Ok((TetraSystem { alphabet, allowed: keep, seeds: Vec::new() }, dropped))
    }

    /// Symmetric construction from a predicate on quadruples.
    pub fn from_predicate(alphabet: Vec<String>, pred: impl Fn(&[usize; 4]) -> bool) -> Self {
        let n = alphabet.len();
        let mut allowed = Vec::new();
        for x in 0..n.pow(4) {
            let t = [x / (n * n * n), x / (n * n) % n, x / n % n, x % n];
            if pred(&t) && pred(&swap(&t)) {
                allowed.push(t);
            }
        }
        TetraSystem { alphabet, allowed, seeds: Vec::new() }
    }

    /// Projection of Θ on the positions (i, j).
    pub fn projection(&self, i: usize, j: usize) -> Vec<Vec<usize>> {
        let set: BTreeSet<Vec<usize>> = self.allowed.iter().map(|t| vec![t[i], t[j]]).collect();
        set.into_iter().collect()
    }

    pub fn contains(&self, t: &[usize; 4]) -> bool {
        self.allowed.binary_search(t).is_ok()
    }
}

/// The ray rule on DL cells, or an explicit table of allowed
/// (lower₀ … lower_{p−1}, upper₀ … upper_{q−1}) tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DlRule {
    /// Boolean alphabet (0 = ⊥, 1 = ⊤): a ⊤ lower vertex forces all upper
    /// vertices ⊤; a ⊤ upper vertex forces exactly one ⊤ lower vertex.
    Ray,
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlCellSystem {
    pub p: u8,
    pub q: u8,
    pub alphabet: Vec<String>,
    pub rule: DlRule,
    pub seeds: Vec<Seed>,
}

impl DlCellSystem {
    pub fn allows(&self, lower: &[usize], upper: &[usize]) -> bool {
        match &self.rule {
            DlRule::Ray => {
                let nl = lower.iter().filter(|&&x| x == 1).count();
                let any_upper = upper.contains(&1);
                let all_upper = upper.iter().all(|&x| x == 1);
                (nl == 0 || all_upper) && (!any_upper || nl == 1)
            }
            DlRule::Table(rows) => {
                let t: Vec<usize> = lower.iter().chain(upper).copied().collect();
                rows.contains(&t)
            }
        }
    }
}

/// A finite target graph F; tilings of a window are its slice morphisms into F.
#[derive(Clone, Debug)]
pub struct DhsTarget {
    pub f: LabelGraph,
    pub seeds: Vec<Seed>,
}

impl DhsTarget {
    pub fn new(f: LabelGraph) -> Self {
        DhsTarget { f, seeds: Vec::new() }
    }

    pub fn weakly_resolving(&self) -> bool {
        crate::graph::is_weakly_etale(&self.f)
    }
}

#[derive(Clone, Debug)]
pub enum Tileset {
    Wang(WangTileset),
    Tetra(TetraSystem),
    DlCell(DlCellSystem),
    Dhs(DhsTarget),
}

/// A constraint scope on window vertices.
#[derive(Clone, Debug)]
pub enum Constraint {
    /// The tuple of tiles on `scope` must be a row of `allowed`.
    Table { scope: Vec<usize>, allowed: Arc<Vec<Vec<usize>>> },
    /// [`DlRule::Ray`] on a DL cell.
    Ray { lower: Vec<usize>, upper: Vec<usize> },
}

impl Tileset {
    pub fn ntiles(&self) -> usize {
        match self {
            Tileset::Wang(w) => w.tiles.len(),
            Tileset::Tetra(t) => t.alphabet.len(),
            Tileset::DlCell(d) => d.alphabet.len(),
            Tileset::Dhs(d) => d.f.nverts(),
        }
    }

    pub fn tile_name(&self, t: usize) -> String {
        match self {
            Tileset::Wang(w) => w.names[t].clone(),
            Tileset::Tetra(s) => s.alphabet[t].clone(),
            Tileset::DlCell(d) => d.alphabet[t].clone(),
            Tileset::Dhs(d) => d.f.graph.vnames[t].clone(),
        }
    }

    /// Tile by name, or by 0-based index.
    pub fn tile_by_name(&self, name: &str) -> Result<usize> {
        if let Some(t) = (0..self.ntiles()).find(|&t| self.tile_name(t) == name) {
            return Ok(t);
        }
        match name.parse::<usize>() {
            Ok(t) if t < self.ntiles() => Ok(t),
            _ => Err(Error::UnknownName(name.to_string())),
        }
    }

    pub fn seeds(&self) -> &[Seed] {
        match self {
            Tileset::Wang(w) => &w.seeds,
            Tileset::Tetra(t) => &t.seeds,
            Tileset::DlCell(d) => &d.seeds,
            Tileset::Dhs(d) => &d.seeds,
        }
    }

    pub fn seeds_mut(&mut self) -> &mut Vec<Seed> {
        match self {
            Tileset::Wang(w) => &mut w.seeds,
            Tileset::Tetra(t) => &mut t.seeds,
            Tileset::DlCell(d) => &mut d.seeds,
            Tileset::Dhs(d) => &mut d.seeds,
        }
    }

    fn check_window(&self, w: &Window) -> Result<()> {
        let ok = match self {
            Tileset::Wang(_) | Tileset::Tetra(_) => w.is_lamplighter(),
            Tileset::DlCell(d) => !w.is_lamplighter() && (w.p, w.q) == (d.p, d.q),
            Tileset::Dhs(d) => *d.f.target == *w.graph.target,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::LabelMismatch("tileset does not apply to this window's labels".into()))
        }
    }

    /// Constraint scopes fully contained in the window.
    pub fn constraints(&self, w: &Window) -> Result<Vec<Constraint>> {
        self.check_window(w)?;
        let g = &w.graph;
        let mut out = Vec::new();
        match self {
            Tileset::Wang(ws) => {
                let pa = Arc::new(ws.pairs(GEN_A));
                let pb = Arc::new(ws.pairs(GEN_B));
                for e in 0..g.nedges() {
                    let (t, h) = g.graph.edges[e];
                    match g.elab[e] {
                        GEN_A => out.push(Constraint::Table { scope: vec![t, h], allowed: pa.clone() }),
                        GEN_B => out.push(Constraint::Table { scope: vec![t, h], allowed: pb.clone() }),
                        _ => {}
                    }
                }
            }
            Tileset::Tetra(ts) => {
                let cell = Arc::new(ts.allowed.iter().map(|t| t.to_vec()).collect::<Vec<_>>());
                for c in w.tetra_cells() {
                    out.push(Constraint::Table { scope: c.to_vec(), allowed: cell.clone() });
                }
                let pa = Arc::new(ts.projection(0, 2));
                let pb = Arc::new(ts.projection(0, 3));
                for e in 0..g.nedges() {
                    let l = g.elab[e];
                    if (l != GEN_A && l != GEN_B) || w.edge_in_complete_cell(e) {
                        continue;
                    }
                    let (t, h) = g.graph.edges[e];
                    let allowed = if l == GEN_A { pa.clone() } else { pb.clone() };
                    out.push(Constraint::Table { scope: vec![t, h], allowed });
                }
            }
            Tileset::DlCell(ds) => {
                for (lower, upper) in w.dl_cells() {
                    match &ds.rule {
                        DlRule::Ray => out.push(Constraint::Ray { lower, upper }),
                        DlRule::Table(rows) => {
                            out.push(Constraint::Table { scope: lower.into_iter().chain(upper).collect(), allowed: Arc::new(rows.clone()) })
                        }
                    }
                }
            }
            Tileset::Dhs(d) => {
                let f = &d.f;
                let nl = f.target.nedges();
                let mut by_label = vec![Vec::new(); nl];
                for x in 0..f.nedges() {
                    let (t, h) = f.graph.edges[x];
                    by_label[f.elab[x]].push(vec![t, h]);
                }
                let tables: Vec<Arc<Vec<Vec<usize>>>> = by_label
                    .into_iter()
                    .map(|mut v| {
                        v.sort();
                        v.dedup();
                        Arc::new(v)
                    })
                    .collect();
                let mut vtables: HashMap<usize, Arc<Vec<Vec<usize>>>> = HashMap::new();
                for v in 0..g.nverts() {
                    let l = g.vlab[v];
                    let rows = vtables
                        .entry(l)
                        .or_insert_with(|| Arc::new((0..f.nverts()).filter(|&x| f.vlab[x] == l).map(|x| vec![x]).collect()));
                    if rows.len() < f.nverts() {
                        out.push(Constraint::Table { scope: vec![v], allowed: rows.clone() });
                    }
                }
                for e in 0..g.nedges() {
                    // one direction per reversal orbit suffices when F is unoriented
                    if let (Some(r), true) = (g.graph.rev_of(e), f.graph.is_unoriented()) {
                        if r < e {
                            continue;
                        }
                    }
                    let (t, h) = g.graph.edges[e];
                    out.push(Constraint::Table { scope: vec![t, h], allowed: tables[g.elab[e]].clone() });
                }
            }
        }
        Ok(out)
    }

    /// Independent validity check of a total assignment against the raw
    /// rules. Returns human-readable violations (empty when valid).
    pub fn violations(&self, w: &Window, x: &[usize]) -> Vec<String> {
        let mut out = Vec::new();
        if x.len() != w.len() {
            out.push(format!("assignment has {} entries for {} vertices", x.len(), w.len()));
            return out;
        }
        if let Some(v) = (0..x.len()).find(|&v| x[v] >= self.ntiles()) {
            out.push(format!("vertex {} carries unknown tile {}", w.points[v], x[v]));
            return out;
        }
        let g = &w.graph;
        let pt = |v: usize| w.points[v].to_string();
        match self {
            Tileset::Wang(ws) => {
                for e in 0..g.nedges() {
                    let (t, h) = g.graph.edges[e];
                    let (f, b) = match g.elab[e] {
                        GEN_A => (DIR_A, DIR_A_INV),
                        GEN_B => (DIR_B, DIR_B_INV),
                        _ => continue,
                    };
                    if ws.tiles[x[t]][f] != ws.tiles[x[h]][b] {
                        out.push(format!("colour mismatch on edge {} -> {}", pt(t), pt(h)));
                    }
                }
            }
            Tileset::Tetra(ts) => {
                for c in w.tetra_cells() {
                    let q = [x[c[0]], x[c[1]], x[c[2]], x[c[3]]];
                    if !ts.allowed.contains(&q) {
                        out.push(format!("cell at {} carries a forbidden quadruple", pt(c[0])));
                    }
                }
                for e in 0..g.nedges() {
                    let l = g.elab[e];
                    if (l != GEN_A && l != GEN_B) || w.edge_in_complete_cell(e) {
                        continue;
                    }
                    let (t, h) = g.graph.edges[e];
                    let j = if l == GEN_A { 2 } else { 3 };
                    if !ts.allowed.iter().any(|q| q[0] == x[t] && q[j] == x[h]) {
                        out.push(format!("edge {} -> {} has no allowed cell", pt(t), pt(h)));
                    }
                }
            }
            Tileset::DlCell(ds) => {
                for (lower, upper) in w.dl_cells() {
                    let lo: Vec<usize> = lower.iter().map(|&v| x[v]).collect();
                    let up: Vec<usize> = upper.iter().map(|&v| x[v]).collect();
                    if !ds.allows(&lo, &up) {
                        out.push(format!("DL cell below {} violates the rule", pt(upper[0])));
                    }
                }
            }
            Tileset::Dhs(d) => {
                for v in 0..g.nverts() {
                    if d.f.vlab[x[v]] != g.vlab[v] {
                        out.push(format!("vertex {} has a wrongly labelled image", pt(v)));
                    }
                }
                for e in 0..g.nedges() {
                    let (t, h) = g.graph.edges[e];
                    let ok = (0..d.f.nedges()).any(|y| d.f.graph.edges[y] == (x[t], x[h]) && d.f.elab[y] == g.elab[e]);
                    if !ok {
                        out.push(format!("edge {} -> {} has no image in F", pt(t), pt(h)));
                    }
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> Result<String> {
        let mut s = String::new();
        match self {
            Tileset::Wang(w) => {
                s.push_str("kind wang\n");
                let _ = writeln!(s, "colors {}", w.colors.join(" "));
                for (t, name) in w.tiles.iter().zip(&w.names) {
                    let c = |d: usize| &w.colors[t[d]];
                    let _ = writeln!(s, "tile {} {} {} {} {}", c(0), c(1), c(2), c(3), name);
                }
            }
            Tileset::Tetra(t) => {
                s.push_str("kind tetra\n");
                let _ = writeln!(s, "alphabet {}", t.alphabet.join(" "));
                for q in &t.allowed {
                    let a = |i: usize| &t.alphabet[q[i]];
                    let _ = writeln!(s, "tetra {} {} {} {}", a(0), a(1), a(2), a(3));
                }
            }
            _ => return Err(Error::Invalid("only Wang and tetra tilesets have a file form".into())),
        }
        for seed in self.seeds() {
            let _ = writeln!(s, "seed {} {}", seed.word, seed.tile);
        }
        Ok(s)
    }

    /// Parses the tileset file format. Non-symmetric Θ is reduced to its
    /// symmetric part (strict mode rejects it); the dropped quadruples are
    /// returned as warnings.
    pub fn parse(text: &str, strict: bool) -> Result<(Tileset, Vec<String>)> {
        let mut kind: Option<String> = None;
        let mut symbols: Option<Vec<String>> = None;
        let mut wang: Vec<([usize; 4], String)> = Vec::new();
        let mut tetra: Vec<[usize; 4]> = Vec::new();
        let mut seeds: Vec<(usize, String, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let tok: Vec<&str> = line.split_whitespace().collect();
            let lookup = |name: &str| -> Result<usize> {
                let sy = symbols.as_ref().ok_or_else(|| Error::parse(ln, "symbols must be declared first"))?;
                sy.iter().position(|c| c == name).ok_or_else(|| Error::parse(ln, format!("unknown symbol `{name}`")))
            };
            match tok[0] {
                "kind" if tok.len() == 2 && (tok[1] == "wang" || tok[1] == "tetra") => {
                    if kind.replace(tok[1].to_string()).is_some() {
                        return Err(Error::parse(ln, "duplicate `kind`"));
                    }
                }
                "colors" | "alphabet" => {
                    let want = if tok[0] == "colors" { "wang" } else { "tetra" };
                    if kind.as_deref() != Some(want) {
                        return Err(Error::parse(ln, format!("`{}` needs `kind {want}` first", tok[0])));
                    }
                    let list: Vec<String> = tok[1..].iter().map(|s| s.to_string()).collect();
                    let uniq: BTreeSet<&String> = list.iter().collect();
                    if uniq.len() != list.len() {
                        return Err(Error::parse(ln, "duplicate symbol"));
                    }
                    if symbols.replace(list).is_some() {
                        return Err(Error::parse(ln, "symbols declared twice"));
                    }
                }
                "tile" if kind.as_deref() == Some("wang") && (tok.len() == 5 || tok.len() == 6) => {
                    let t = [lookup(tok[1])?, lookup(tok[2])?, lookup(tok[3])?, lookup(tok[4])?];
                    let name = tok.get(5).map(|s| s.to_string()).unwrap_or_else(|| wang.len().to_string());
                    wang.push((t, name));
                }
                "tetra" if kind.as_deref() == Some("tetra") && tok.len() == 5 => {
                    tetra.push([lookup(tok[1])?, lookup(tok[2])?, lookup(tok[3])?, lookup(tok[4])?]);
                }
                "seed" if tok.len() == 3 => seeds.push((ln, tok[1].to_string(), tok[2].to_string())),
                _ => return Err(Error::parse(ln, format!("unrecognised line `{line}`"))),
            }
        }
        let symbols = symbols.ok_or_else(|| Error::parse(0, "missing `colors`/`alphabet` line"))?;
        let mut warnings = Vec::new();
        let mut ts = match kind.as_deref() {
            Some("wang") => {
                let (tiles, names): (Vec<[usize; 4]>, Vec<String>) = wang.into_iter().unzip();
                Tileset::Wang(WangTileset::new(symbols, tiles, names)?)
            }
            Some("tetra") => {
                let (t, dropped) = TetraSystem::new(symbols, tetra, strict)?;
                for d in dropped {
                    let names: Vec<&str> = d.iter().map(|&c| t.alphabet[c].as_str()).collect();
                    warnings.push(format!("dropped quadruple {} (its swap is not allowed)", names.join(" ")));
                }
                Tileset::Tetra(t)
            }
            _ => return Err(Error::parse(0, "missing `kind` line")),
        };
        for (ln, word, tile) in seeds {
            let t = ts.tile_by_name(&tile).map_err(|_| Error::parse(ln, format!("unknown tile `{tile}`")))?;
            crate::lamplighter::parse_word(&word).map_err(|_| Error::parse(ln, format!("bad seed word `{word}`")))?;
            ts.seeds_mut().push(Seed { word, tile: t });
        }
        Ok((ts, warnings))
    }
}

/// Tetrahedron system with the same tilings: Θ lists tile quadruples whose
/// colours match along the four cell edges.
pub fn wang_to_tetra(w: &WangTileset) -> TetraSystem {
    let n = w.tiles.len();
    let t = &w.tiles;
    let mut allowed = Vec::new();
    for a in 0..n {
        for c in (0..n).filter(|&c| t[a][DIR_A] == t[c][DIR_A_INV]) {
            for b in 0..n {
                if t[b][DIR_B] != t[c][DIR_B_INV] {
                    continue;
                }
                for d in 0..n {
                    if t[b][DIR_A] == t[d][DIR_A_INV] && t[a][DIR_B] == t[d][DIR_B_INV] {
                        allowed.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    allowed.sort();
    TetraSystem { alphabet: w.names.clone(), allowed, seeds: w.seeds.clone() }
}

/// Wang tiles with colours Θ: tiles (θ, θ, η, η̄) for θ₁ = η₃. Tile
/// (θ, η) sits at a vertex that is position 1 of θ and position 3 of η.
pub fn tetra_to_wang(t: &TetraSystem) -> (WangTileset, Vec<(usize, usize)>) {
    let idx: HashMap<[usize; 4], usize> = t.allowed.iter().enumerate().map(|(i, q)| (*q, i)).collect();
    let colors: Vec<String> = t
        .allowed
        .iter()
        .map(|q| q.iter().map(|&c| t.alphabet[c].as_str()).collect::<Vec<_>>().join(","))
        .map(|s| format!("[{s}]"))
        .collect();
    let mut tiles = Vec::new();
    let mut names = Vec::new();
    let mut pairs = Vec::new();
    for (i, th) in t.allowed.iter().enumerate() {
        for (j, eta) in t.allowed.iter().enumerate() {
            if th[0] == eta[2] {
                tiles.push([i, i, j, idx[&swap(eta)]]);
                names.push(format!("{}{}", colors[i], colors[j]));
                pairs.push((i, j));
            }
        }
    }
    (WangTileset { colors, tiles, names, seeds: Vec::new() }, pairs)
}

/// Product of two tetra systems restricted by a joint rule on quadruple pairs.
pub fn product_tileset(t1: &TetraSystem, t2: &TetraSystem, joint: impl Fn(&[usize; 4], &[usize; 4]) -> bool) -> TetraSystem {
    let n2 = t2.alphabet.len();
    let mut alphabet = Vec::new();
    for a in &t1.alphabet {
        for b in &t2.alphabet {
            alphabet.push(format!("{a}.{b}"));
        }
    }
    let ok = |x: &[usize; 4], y: &[usize; 4]| joint(x, y) && joint(&swap(x), &swap(y));
    let mut allowed = Vec::new();
    for x in &t1.allowed {
        for y in &t2.allowed {
            if ok(x, y) {
                allowed.push([x[0] * n2 + y[0], x[1] * n2 + y[1], x[2] * n2 + y[2], x[3] * n2 + y[3]]);
            }
        }
    }
    allowed.sort();
    TetraSystem { alphabet, allowed, seeds: Vec::new() }
}

/// Label graph a tileset expects on its windows.
pub fn label_graph_for(ts: &Tileset) -> Arc<crate::graph::Graph> {
    match ts {
        Tileset::DlCell(d) => dl_labels(d.p, d.q),
        Tileset::Dhs(d) => d.f.target.clone(),
        _ => lamplighter_labels(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamplighter::{ball, tetrahedron};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_constant_tile() {
        let w = WangTileset::new(names(&["c"]), vec![[0; 4]], names(&["x"])).unwrap();
        let t = wang_to_tetra(&w);
        assert_eq!(t.allowed, vec![[0; 4]]);
        let (back, _) = tetra_to_wang(&t);
        assert_eq!(back.tiles.len(), 1);
    }

    #[test]
    fn empty_tileset() {
        let w = WangTileset::new(names(&["c"]), vec![], vec![]).unwrap();
        assert!(wang_to_tetra(&w).allowed.is_empty());
        let t = TetraSystem::new(names(&["x"]), vec![], true).unwrap().0;
        assert!(tetra_to_wang(&t).0.tiles.is_empty());
    }

    #[test]
    fn symmetric_part() {
        let (t, dropped) = TetraSystem::new(names(&["0", "1"]), vec![[0, 0, 0, 0], [1, 0, 0, 0], [0, 1, 0, 0]], false).unwrap();
        assert_eq!(t.allowed, vec![[0, 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0]]);
        assert!(dropped.is_empty());
        let (t, dropped) = TetraSystem::new(names(&["0", "1"]), vec![[0, 0, 0, 0], [1, 0, 0, 0]], false).unwrap();
        assert_eq!(t.allowed, vec![[0, 0, 0, 0]]);
        assert_eq!(dropped, vec![[1, 0, 0, 0]]);
        assert!(TetraSystem::new(names(&["0", "1"]), vec![[1, 0, 0, 0]], true).is_err());
    }

    #[test]
    fn file_round_trip() {
        let text = "# comb-like\nkind wang\ncolors a b\ntile a b a b x\ntile b a b a\nseed e x\n";
        let (ts, warn) = Tileset::parse(text, false).unwrap();
        assert!(warn.is_empty());
        assert_eq!(ts.ntiles(), 2);
        assert_eq!(ts.tile_name(1), "1");
        assert_eq!(ts.seeds(), &[Seed { word: "e".into(), tile: 0 }]);
        let again = Tileset::parse(&ts.to_text().unwrap(), false).unwrap().0;
        assert_eq!(again.to_text().unwrap(), ts.to_text().unwrap());
        assert!(matches!(Tileset::parse("kind wang\ncolors a\ntile a a a z\n", false), Err(Error::Parse { line: 3, .. })));
    }

    #[test]
    fn tetra_file_warns() {
        let text = "kind tetra\nalphabet F T\ntetra T F F F\ntetra F F F F\n";
        let (ts, warn) = Tileset::parse(text, false).unwrap();
        assert_eq!(warn.len(), 1);
        assert_eq!(ts.to_text().unwrap(), "kind tetra\nalphabet F T\ntetra F F F F\n");
        assert!(Tileset::parse(text, true).is_err());
    }

    #[test]
    fn constraint_scopes() {
        let w = WangTileset::new(names(&["c"]), vec![[0; 4]], names(&["x"])).unwrap();
        let win = ball(1).unwrap();
        // four edges from the identity
        assert_eq!(Tileset::Wang(w).constraints(&win).unwrap().len(), 4);
        let t = TetraSystem::new(names(&["x"]), vec![[0; 4]], true).unwrap().0;
        let win = tetrahedron(0, 2).unwrap();
        let cs = Tileset::Tetra(t).constraints(&win).unwrap();
        assert_eq!(cs.len(), 4);
    }
}
