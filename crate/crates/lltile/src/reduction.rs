//! Tileset-level reductions: the half-plane tileset Π_T over the comb, its
//! decoding back to ℍ, and the exponential target F^S of a simulator.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{exponential, sharp};
use crate::lamplighter::{GroupPoint, Window};
use crate::sim::Simulator;
use crate::tiles::builtin::{comb, comb_case, TAS, TBS, TDS, TRS, TSS, TTS};
use crate::tiles::{DhsTarget, Seed, WangTileset, DIR_A_INV, DIR_B, DIR_B_INV};

/// Half-plane tile sides, in tuple order.
pub const SIDE_S: usize = 0;
pub const SIDE_E: usize = 1;
pub const SIDE_N: usize = 2;
pub const SIDE_W: usize = 3;

/// Wang tiles on the half-plane ℍ = {(m, n) : m ≥ n}, with a seed tile at (0, 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfPlaneTileset {
    pub colors: Vec<String>,
    /// (S, E, N, W) colour indices.
    pub tiles: Vec<[usize; 4]>,
    pub seed: usize,
}

impl HalfPlaneTileset {
    pub fn new(colors: Vec<String>, tiles: Vec<[usize; 4]>, seed: usize) -> Result<Self> {
        if let Some(t) = tiles.iter().find(|t| t.iter().any(|&c| c >= colors.len())) {
            return Err(Error::Invalid(format!("half-plane tile {t:?} uses an unknown colour")));
        }
        if seed >= tiles.len() {
            return Err(Error::Invalid(format!("seed tile {seed} out of range")));
        }
        Ok(HalfPlaneTileset { colors, tiles, seed })
    }

    /// Parses `colors …`, `tile <S> <E> <N> <W>` and `seedtile <index>` lines.
    pub fn parse(text: &str) -> Result<Self> {
        let mut colors: Vec<String> = Vec::new();
        let mut tiles = Vec::new();
        let mut seed = None;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let tok: Vec<&str> = line.split_whitespace().collect();
            match tok[0] {
                "colors" => colors.extend(tok[1..].iter().map(|s| s.to_string())),
                "tile" if tok.len() == 5 => {
                    let mut t = [0; 4];
                    for (k, c) in tok[1..].iter().enumerate() {
                        t[k] = colors.iter().position(|x| x == c).ok_or_else(|| Error::parse(ln, format!("unknown colour `{c}`")))?;
                    }
                    tiles.push(t);
                }
                "seedtile" if tok.len() == 2 => {
                    seed = Some(tok[1].parse::<usize>().map_err(|_| Error::parse(ln, format!("bad tile index `{}`", tok[1])))?);
                }
                _ => return Err(Error::parse(ln, format!("unrecognised line `{line}`"))),
            }
        }
        let seed = seed.ok_or_else(|| Error::parse(0, "missing `seedtile` line"))?;
        if seed >= tiles.len() {
            return Err(Error::parse(0, format!("seed tile {seed} out of range")));
        }
        HalfPlaneTileset::new(colors, tiles, seed)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("colors {}\n", self.colors.join(" "));
        for t in &self.tiles {
            let _ = writeln!(s, "tile {}", t.map(|c| self.colors[c].as_str()).join(" "));
        }
        let _ = writeln!(s, "seedtile {}", self.seed);
        s
    }

    /// Validity of a finite patch of ℍ: every tile in T, matching colours on
    /// every edge inside the patch, the seed tile at (0, 0) if present.
    pub fn patch_violations(&self, patch: &BTreeMap<(i64, i64), usize>) -> Vec<String> {
        let mut out = Vec::new();
        for (&(m, n), &t) in patch {
            if t >= self.tiles.len() {
                out.push(format!("({m},{n}): no tile {t}"));
                continue;
            }
            if let Some(&u) = patch.get(&(m + 1, n)) {
                if u < self.tiles.len() && self.tiles[t][SIDE_E] != self.tiles[u][SIDE_W] {
                    out.push(format!("({m},{n})→({},{n}): east/west mismatch", m + 1));
                }
            }
            if let Some(&u) = patch.get(&(m, n + 1)) {
                if u < self.tiles.len() && self.tiles[t][SIDE_N] != self.tiles[u][SIDE_S] {
                    out.push(format!("({m},{n})→({m},{}): north/south mismatch", n + 1));
                }
            }
        }
        if let Some(&t) = patch.get(&(0, 0)) {
            if t != self.seed {
                out.push(format!("(0,0) carries {t}, not the seed {}", self.seed));
            }
        }
        out
    }
}

/// A second-layer word of length ≤ 2 over the colours of T.
pub type Word = Vec<usize>;

/// A tile of Π_T: a comb tile and a word per direction (a, b, a⁻¹, b⁻¹).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductTile {
    pub comb: usize,
    pub layer: [Word; 4],
}

/// The six product tiles built from one tile (i, j, k, ℓ) of T.
pub fn product_family(t: [usize; 4]) -> [ProductTile; 6] {
    let [i, j, k, l] = t;
    let e = Vec::new;
    let ik = || vec![i, k];
    let p = |comb, layer| ProductTile { comb, layer };
    [
        p(TAS, [e(), vec![j], e(), vec![i]]),
        p(TTS, [e(), e(), e(), e()]),
        p(TBS, [e(), vec![j], ik(), vec![l]]),
        p(TSS, [ik(), e(), ik(), e()]),
        p(TDS, [ik(), vec![k], e(), vec![i]]),
        p(TRS, [e(), e(), e(), e()]),
    ]
}

/// Π_T as a seeded Wang tileset, with the product structure of each tile.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub wang: WangTileset,
    pub tiles: Vec<ProductTile>,
    /// Product tiles before deduplication (six per tile of T).
    pub raw: usize,
    index: HashMap<ProductTile, usize>,
}

impl Reduction {
    pub fn tile_index(&self, t: &ProductTile) -> Option<usize> {
        self.index.get(t).copied()
    }
}

fn word_name(t: &HalfPlaneTileset, w: &Word) -> String {
    if w.is_empty() {
        "-".into()
    } else {
        w.iter().map(|&c| t.colors[c].as_str()).collect::<Vec<_>>().join(".")
    }
}

/// Builds Π_T: comb tiles paired with second-layer words, seeded at the
/// identity by π₀ = (tas, [ε, j, ε, i]) of the seed tile (i, j, k, ℓ).
pub fn reduce_halfplane(t: &HalfPlaneTileset) -> Result<Reduction> {
    let c = comb();
    let raw: Vec<ProductTile> = t.tiles.iter().flat_map(|&x| product_family(x)).collect();
    let tiles: Vec<ProductTile> = raw.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut colors: Vec<String> = Vec::new();
    let mut cindex: HashMap<String, usize> = HashMap::new();
    let mut wtiles = Vec::new();
    let mut names = Vec::new();
    for p in &tiles {
        let mut wt = [0; 4];
        for d in 0..4 {
            let name = format!("{}/{}", c.colors[c.tiles[p.comb][d]], word_name(t, &p.layer[d]));
            wt[d] = *cindex.entry(name.clone()).or_insert_with(|| {
                colors.push(name);
                colors.len() - 1
            });
        }
        wtiles.push(wt);
        names.push(format!("{}[{}]", c.names[p.comb], p.layer.iter().map(|w| word_name(t, w)).collect::<Vec<_>>().join("|")));
    }
    let mut wang = WangTileset::new(colors, wtiles, names)?;
    let seed = product_family(t.tiles[t.seed])[TAS].clone();
    let index: HashMap<ProductTile, usize> = tiles.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    wang.seeds.push(Seed { word: "e".into(), tile: index[&seed] });
    Ok(Reduction { wang, tiles, raw: raw.len(), index })
}

/// The single run of lamps [l, r] of a point, if it has exactly one.
fn single_run(g: &GroupPoint) -> Option<(i64, i64)> {
    let ls = g.lamps();
    let (&l, &r) = (ls.first()?, ls.last()?);
    (r - l + 1 == ls.len() as i64).then_some((l, r))
}

/// Point of the comb carrying ζ(m, n) on its bottom tile: aⁿ b^{m−n}.
pub fn halfplane_point(m: i64, n: i64) -> GroupPoint {
    GroupPoint::from_lamps(m, n..m)
}

/// ℍ-tiles recovered from a tiling of a window by Π_T.
#[derive(Clone, Debug, Default)]
pub struct Decoded {
    /// ζ(m, n) as a tile index of T. Spine tiles (m = n) are completed by
    /// the first tile of T with the observed south and east colours.
    pub zeta: BTreeMap<(i64, i64), usize>,
    /// Cells (m, n), m > n, whose tds column was followed from tbs to tds.
    pub starred: BTreeSet<(i64, i64)>,
    pub problems: Vec<String>,
}

impl Decoded {
    /// The decoded patch restricted to cells whose every recorded constraint
    /// was read inside the window.
    pub fn certified(&self) -> BTreeMap<(i64, i64), usize> {
        self.zeta.iter().filter(|((m, n), _)| m == n || self.starred.contains(&(*m, *n))).map(|(&p, &t)| (p, t)).collect()
    }
}

/// Decodes ζ from a Π_T tiling and checks the (★) bookkeeping: along every
/// column aⁿb^{m−n}a^{−p} that lies in the window with first layer tbs, tss…,
/// tds, the tds tile's b- and b⁻¹-words are the N and S colours of ζ(m, n).
/// Matching of decoded tiles is checked wherever both tiles are certified.
pub fn decode(red: &Reduction, t: &HalfPlaneTileset, w: &Window, x: &[usize]) -> Result<Decoded> {
    if x.len() != w.len() || x.iter().any(|&v| v >= red.tiles.len()) {
        return Err(Error::Invalid("tiling does not fit the window".into()));
    }
    let mut d = Decoded::default();
    let at = |g: &GroupPoint| w.vertex(g).map(|v| &red.tiles[x[v]]);
    for (v, g) in w.points.iter().enumerate() {
        let p = &red.tiles[x[v]];
        match p.comb {
            TAS if g.digits.is_empty() => {
                let (i, j) = (p.layer[DIR_B_INV][0], p.layer[DIR_B][0]);
                let tile = t.tiles.iter().position(|s| s[SIDE_S] == i && s[SIDE_E] == j).expect("spine tile has a completion");
                d.zeta.insert((g.marker, g.marker), tile);
            }
            TBS => {
                let Some((l, r)) = single_run(g).filter(|&(_, r)| g.marker == r + 1) else { continue };
                let (m, n) = (r + 1, l);
                let ik = &p.layer[DIR_A_INV];
                let s = [ik[0], p.layer[DIR_B][0], ik[1], p.layer[DIR_B_INV][0]];
                let Some(tile) = t.tiles.iter().position(|u| *u == s) else {
                    d.problems.push(format!("{g}: second layer {s:?} is not a tile of T"));
                    continue;
                };
                d.zeta.insert((m, n), tile);
                // follow the column down to the tds tile
                let mut ok = true;
                for q in (n + 1)..m {
                    let h = GroupPoint::from_lamps(q, n..m);
                    if !matches!(at(&h), Some(u) if u.comb == TSS) {
                        ok = false;
                        break;
                    }
                }
                let bottom = GroupPoint::from_lamps(n, n..m);
                match at(&bottom) {
                    Some(u) if ok && u.comb == TDS => {
                        if u.layer[DIR_B] != vec![s[SIDE_N]] || u.layer[DIR_B_INV] != vec![s[SIDE_S]] {
                            d.problems.push(format!("{bottom}: tds words {:?} disagree with ζ({m},{n}) = {s:?}", u.layer));
                        }
                        d.starred.insert((m, n));
                    }
                    _ => {}
                }
            }
            _ => {}
        }
    }
    let cert = d.certified();
    for (&(m, n), &a) in &cert {
        if let Some(&b) = cert.get(&(m + 1, n)) {
            if t.tiles[a][SIDE_E] != t.tiles[b][SIDE_W] {
                d.problems.push(format!("ζ({m},{n}) and ζ({},{n}) disagree east/west", m + 1));
            }
        }
        // the spine tile's north colour is a free choice
        if m > n {
            if let Some(&b) = cert.get(&(m, n + 1)) {
                if t.tiles[a][SIDE_N] != t.tiles[b][SIDE_S] {
                    d.problems.push(format!("ζ({m},{n}) and ζ({m},{}) disagree north/south", n + 1));
                }
            }
        }
    }
    if let Some(&z) = d.zeta.get(&(0, 0)) {
        let (s, u) = (t.tiles[z], t.tiles[t.seed]);
        if (s[SIDE_S], s[SIDE_E]) != (u[SIDE_S], u[SIDE_E]) {
            d.problems.push("ζ(0,0) does not show the seed's colours".into());
        }
    }
    Ok(d)
}

/// The Π_T configuration built from an ℍ-tiling ζ (tile indices of T):
/// the seeded comb configuration with second layers read off ζ.
pub fn lift_configuration(red: &Reduction, t: &HalfPlaneTileset, w: &Window, zeta: impl Fn(i64, i64) -> usize) -> Result<Vec<usize>> {
    let mut x = Vec::with_capacity(w.len());
    for g in &w.points {
        let (comb_t, tile) = match comb_case(g) {
            None => (TTS, 0),
            Some((_, TAS)) => (TAS, zeta(g.marker, g.marker)),
            Some((_, c @ (TBS | TDS | TSS))) => {
                let (l, r) = single_run(g).expect("comb case on a single run");
                (c, zeta(r + 1, l))
            }
            Some((_, c)) => (c, 0),
        };
        let p = product_family(t.tiles[tile])[comb_t].clone();
        let v = red.tile_index(&p).ok_or_else(|| Error::Invalid(format!("{g}: product tile {p:?} missing from Π_T")))?;
        x.push(v);
    }
    Ok(x)
}

/// F^S = (F♯)^S: a target over the simulator's host labels whose morphisms
/// correspond to those of simulated graphs into F.
pub fn tileset_exponential(f: &DhsTarget, s: &Simulator, cap: usize) -> Result<DhsTarget> {
    if *f.f.target != *s.sub.base {
        return Err(Error::LabelMismatch("target and simulator disagree on B".into()));
    }
    let sharp_f = sharp(&f.f, &s.sub)?;
    let e = exponential(&sharp_f, &s.graph, cap)?;
    Ok(DhsTarget::new(e.graph))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamplighter::ball;
    use crate::sat::{encode, enumerate, solve, validate};
    use crate::tiles::Tileset;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mono() -> HalfPlaneTileset {
        HalfPlaneTileset::parse("colors c\ntile c c c c\nseedtile 0\n").unwrap()
    }

    fn solve_on(red: &Reduction, r: usize) -> (Window, Option<Vec<usize>>) {
        let w = ball(r).unwrap();
        let ts = Tileset::Wang(red.wang.clone());
        let cnf = encode(&w, &ts, &red.wang.seeds).unwrap();
        (w, solve(&cnf).unwrap())
    }

    #[test]
    fn parse_round_trip() {
        let t = HalfPlaneTileset::parse("# two colours\ncolors x y\ntile x y x y\ntile y x y x\nseedtile 1\n").unwrap();
        assert_eq!(t.tiles, vec![[0, 1, 0, 1], [1, 0, 1, 0]]);
        assert_eq!(HalfPlaneTileset::parse(&t.to_text()).unwrap(), t);
        assert!(matches!(HalfPlaneTileset::parse("colors x\ntile x x x z\nseedtile 0"), Err(Error::Parse { line: 2, .. })));
        assert!(HalfPlaneTileset::parse("colors x\ntile x x x x\nseedtile 3").is_err());
    }

    #[test]
    fn six_families() {
        let t = HalfPlaneTileset::new(vec!["x".into(), "y".into()], vec![[0, 0, 0, 0], [0, 1, 1, 0], [1, 1, 1, 1]], 0).unwrap();
        let red = reduce_halfplane(&t).unwrap();
        assert_eq!(red.raw, 18);
        // tts and trs collapse to one tile each
        assert_eq!(red.tiles.len(), 18 - 2 * 2);
        assert_eq!(red.wang.names[red.wang.seeds[0].tile], "tas[-|x|-|x]");
    }

    #[test]
    fn monochrome_is_satisfiable() {
        let t = mono();
        let red = reduce_halfplane(&t).unwrap();
        let (w, x) = solve_on(&red, 4);
        let x = x.expect("monochrome Π_T tiles ball(4)");
        let d = decode(&red, &t, &w, &x).unwrap();
        assert!(d.problems.is_empty(), "{:?}", d.problems);
        assert!(!d.starred.is_empty());
    }

    #[test]
    fn east_west_mismatch_is_unsatisfiable() {
        let t = HalfPlaneTileset::parse("colors c d\ntile c d c c\nseedtile 0\n").unwrap();
        let red = reduce_halfplane(&t).unwrap();
        assert!(solve_on(&red, 2).1.is_none());
    }

    /// A random edge colouring of a box of ℍ and the tileset it uses.
    fn random_zeta(seed: u64, ncol: usize, r: i64) -> (HalfPlaneTileset, HashMap<(i64, i64), usize>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut horiz = HashMap::new();
        let mut vert = HashMap::new();
        for m in -r..=r + 1 {
            for n in -r..=r + 1 {
                horiz.insert((m, n), rng.gen_range(0..ncol));
                vert.insert((m, n), rng.gen_range(0..ncol));
            }
        }
        let mut tiles: Vec<[usize; 4]> = Vec::new();
        let mut zeta = HashMap::new();
        for m in -r..=r {
            for n in -r..=m {
                let s = [vert[&(m, n)], horiz[&(m + 1, n)], vert[&(m, n + 1)], horiz[&(m, n)]];
                let i = tiles.iter().position(|u| *u == s).unwrap_or_else(|| {
                    tiles.push(s);
                    tiles.len() - 1
                });
                zeta.insert((m, n), i);
            }
        }
        let colors = (0..ncol).map(|c| format!("c{c}")).collect();
        let seed = zeta[&(0, 0)];
        (HalfPlaneTileset::new(colors, tiles, seed).unwrap(), zeta)
    }

    #[test]
    fn lifted_configurations_validate() {
        for seed in 0..4 {
            let (t, zeta) = random_zeta(seed, 3, 6);
            let red = reduce_halfplane(&t).unwrap();
            let w = ball(4).unwrap();
            let x = lift_configuration(&red, &t, &w, |m, n| zeta[&(m, n)]).unwrap();
            let v = validate(&w, &Tileset::Wang(red.wang.clone()), &red.wang.seeds, &x).unwrap();
            assert!(v.is_empty(), "seed {seed}: {v:?}");
            let d = decode(&red, &t, &w, &x).unwrap();
            assert!(d.problems.is_empty(), "{:?}", d.problems);
            for (&(m, n), &z) in &d.certified() {
                if m > n {
                    assert_eq!(z, zeta[&(m, n)]);
                }
            }
        }
    }

    #[test]
    fn star_holds_in_enumerated_solutions() {
        let t = HalfPlaneTileset::parse("colors x y\ntile x x x x\ntile x y x y\ntile y x y x\ntile y y y y\nseedtile 0\n").unwrap();
        let red = reduce_halfplane(&t).unwrap();
        let w = ball(2).unwrap();
        let cnf = encode(&w, &Tileset::Wang(red.wang.clone()), &red.wang.seeds).unwrap();
        let sols = enumerate(&cnf, 100_000).unwrap();
        assert_eq!(sols.len(), 1024);
        for x in &sols {
            let d = decode(&red, &t, &w, x).unwrap();
            assert!(d.starred.contains(&(1, 0)));
            assert!(d.problems.is_empty(), "{:?}", d.problems);
            assert!(t.patch_violations(&d.certified()).is_empty());
        }
    }

    #[test]
    fn patch_checks() {
        let t = HalfPlaneTileset::parse("colors x y\ntile x y x x\ntile y x y y\nseedtile 0\n").unwrap();
        let p: BTreeMap<(i64, i64), usize> = [((0, 0), 0), ((1, 0), 1)].into_iter().collect();
        assert!(t.patch_violations(&p).is_empty());
        let q: BTreeMap<(i64, i64), usize> = [((0, 0), 1)].into_iter().collect();
        assert_eq!(t.patch_violations(&q).len(), 1);
    }

    #[test]
    fn trivial_target_exponential() {
        use crate::graph::{hom_exists, LabelGraph};
        use crate::sim::apply_simulator;
        use crate::sim::builtin::quadrant_to_plane;
        use crate::sim::labels::{plane_dirs, quadrant_patch};
        let dirs = plane_dirs();
        let mut f = LabelGraph::unoriented(dirs.clone());
        f.add_vertex("x", 0);
        f.add_edge_pair(0, 0, "E", "W", 0);
        f.add_edge_pair(0, 0, "N", "S", 2);
        let s = quadrant_to_plane();
        let fs = tileset_exponential(&DhsTarget::new(f.clone()), &s, crate::graph::DEFAULT_EXP_CAP).unwrap();
        assert!(fs.f.nverts() > 0);
        let q = quadrant_patch(3, 3);
        let sim = apply_simulator(&q.host, &s).unwrap();
        assert!(hom_exists(&sim.graph, &f).unwrap());
        assert!(hom_exists(&q.host.graph, &fs.f).unwrap());
    }
}
