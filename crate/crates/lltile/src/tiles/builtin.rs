//! The concrete tilesets: the comb, the ray and sea-level systems, their
//! joins, and the DL ray; plus closed-form oracles for their seeded
//! configurations.

use super::{product_tileset, DlCellSystem, DlRule, TetraSystem, Tileset, WangTileset};
use crate::error::{Error, Result};
use crate::lamplighter::GroupPoint;

/// Comb tile indices, in the order of [`comb`].
pub const TAS: usize = 0;
pub const TTS: usize = 1;
pub const TBS: usize = 2;
pub const TSS: usize = 3;
pub const TDS: usize = 4;
pub const TRS: usize = 5;

pub const FALSE: usize = 0;
pub const TRUE: usize = 1;

/// Sea-level alphabet U ∪ {sea} ∪ D, in index order.
pub const NW: usize = 0;
pub const N: usize = 1;
pub const NE: usize = 2;
pub const SEA: usize = 3;
pub const SW: usize = 4;
pub const S: usize = 5;
pub const SE: usize = 6;
pub const SEA_NAMES: [&str; 7] = ["nw", "n", "ne", "sea", "sw", "s", "se"];

pub const BUILTIN_NAMES: [&str; 7] = ["comb", "ray_left", "ray_right", "omega_lr", "omega_sea", "omega_full", "dl_ray"];

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

/// The six comb tiles over colours {a, b, o, r, s, t, d}.
pub fn comb() -> WangTileset {
    let colors = strings(&["a", "b", "o", "r", "s", "t", "d"]);
    let c = |s: &str| colors.iter().position(|x| x == s).unwrap();
    let spec = [
        ("tas", ["a", "b", "a", "d"]),
        ("tts", ["t", "o", "t", "o"]),
        ("tbs", ["t", "b", "s", "b"]),
        ("tss", ["s", "o", "s", "o"]),
        ("tds", ["s", "d", "r", "d"]),
        ("trs", ["r", "o", "r", "o"]),
    ];
    let tiles = spec.iter().map(|(_, t)| [c(t[0]), c(t[1]), c(t[2]), c(t[3])]).collect();
    let names = spec.iter().map(|(n, _)| n.to_string()).collect();
    WangTileset::new(colors, tiles, names).unwrap()
}

fn bools() -> Vec<String> {
    strings(&["F", "T"])
}

/// Above a ⊤ node both neighbours are ⊤; below it exactly one is.
pub fn ray_left() -> TetraSystem {
    TetraSystem::from_predicate(bools(), |t| {
        let [a, b, c, d] = t.map(|x| x == TRUE);
        (!(a || b) || (c && d)) && (!(c || d) || a != b)
    })
}

/// Mirror of [`ray_left`]: below a ⊤ node both neighbours are ⊤; above it
/// exactly one is.
pub fn ray_right() -> TetraSystem {
    TetraSystem::from_predicate(bools(), |t| {
        let [a, b, c, d] = t.map(|x| x == TRUE);
        (!(c || d) || (a && b)) && (!(a || b) || c != d)
    })
}

/// Left component of an [`omega_lr`] symbol.
pub fn lr_left(x: usize) -> bool {
    x / 2 == TRUE
}

pub fn lr_right(x: usize) -> bool {
    x % 2 == TRUE
}

/// Ray pair joined by: g carries (⊤,⊤) iff g·a does.
pub fn omega_lr() -> TetraSystem {
    let both = |x: usize| lr_left(x) && lr_right(x);
    product_tileset(&ray_left(), &ray_right(), |x, y| {
        let a = x[0] * 2 + y[0];
        let c = x[2] * 2 + y[2];
        both(a) == both(c)
    })
}

fn phi(x: usize) -> i32 {
    match x {
        NW | N | NE => 1,
        SEA => 0,
        _ => -1,
    }
}

fn pair_is(x: usize, y: usize, u: usize, v: usize) -> bool {
    (x, y) == (u, v) || (x, y) == (v, u)
}

/// Sea-level rules over U ∪ {sea} ∪ D.
pub fn omega_sea() -> TetraSystem {
    TetraSystem::from_predicate(strings(&SEA_NAMES), |&[a, b, c, d]| {
        let is_u = |x: usize| phi(x) == 1 && x != SEA;
        let is_d = |x: usize| phi(x) == -1;
        phi(a) == phi(b)
            && phi(c) == phi(d)
            && (0..=1).contains(&(phi(c) - phi(a)))
            && (a != SEA || pair_is(c, d, NW, NE))
            && (c != SEA || pair_is(a, b, SW, SE))
            && (!is_u(a) || (b == a && pair_is(c, d, N, a)))
            && (!is_d(c) || (d == c && pair_is(a, b, S, c)))
    })
}

/// Ω_↔ × Ω_sea joined by the six synchronising implications. Symbol index
/// is lr · 7 + sea.
pub fn omega_full() -> TetraSystem {
    product_tileset(&omega_lr(), &omega_sea(), |x, y| {
        let left = lr_left(x[0]);
        let right = lr_right(x[2]);
        (!(left && y[0] == SEA) || (y[2] == NW && y[3] == NE))
            && (!(left && y[0] == NW) || y[2] == NW)
            && (!(left && y[0] == NE) || y[3] == NE)
            && (!(right && y[2] == SEA) || (y[0] == SW && y[1] == SE))
            && (!(right && y[2] == SW) || y[0] == SW)
            && (!(right && y[2] == SE) || y[1] == SE)
    })
}

pub fn dl_ray(p: u8, q: u8) -> DlCellSystem {
    DlCellSystem { p, q, alphabet: bools(), rule: DlRule::Ray, seeds: Vec::new() }
}

/// Builtin by name; `dl_ray:<p>:<q>` (alias `ray_left:<p>:<q>`) selects a
/// DL ray system.
pub fn builtin(name: &str) -> Result<Tileset> {
    let parts: Vec<&str> = name.split(':').collect();
    Ok(match parts.as_slice() {
        ["comb"] => Tileset::Wang(comb()),
        ["ray_left"] => Tileset::Tetra(ray_left()),
        ["ray_right"] => Tileset::Tetra(ray_right()),
        ["omega_lr"] => Tileset::Tetra(omega_lr()),
        ["omega_sea"] => Tileset::Tetra(omega_sea()),
        ["omega_full"] => Tileset::Tetra(omega_full()),
        ["dl_ray" | "ray_left", p, q] => {
            let p: u8 = p.parse().map_err(|_| Error::InvalidToken(name.to_string()))?;
            let q: u8 = q.parse().map_err(|_| Error::InvalidToken(name.to_string()))?;
            if p < 2 || q < 2 {
                return Err(Error::Invalid(format!("DL({p},{q}) needs p, q >= 2")));
            }
            Tileset::DlCell(dl_ray(p, q))
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    })
}

/// Maximal runs of lit lamps, as inclusive digit ranges.
fn runs(g: &GroupPoint) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = Vec::new();
    for k in g.lamps() {
        match out.last_mut() {
            Some((_, r)) if *r + 1 == k => *r = k,
            _ => out.push((k, k)),
        }
    }
    out
}

/// Which of the six comb regions Z₁..Z₆ contains `g` (None off Z), with the
/// tile the seeded configuration carries there.
pub fn comb_case(g: &GroupPoint) -> Option<(usize, usize)> {
    let rs = runs(g);
    let m = g.marker;
    match rs.as_slice() {
        [] => Some((1, TAS)),
        [(l, r)] => Some(if m == r + 1 {
            (2, TBS)
        } else if m == *l {
            (3, TDS)
        } else if *l < m && m <= *r {
            (4, TSS)
        } else if m > r + 1 {
            (5, TTS)
        } else {
            (6, TRS)
        }),
        _ => None,
    }
}

/// The explicit comb configuration seeded by tas at the identity.
pub fn comb_tile(g: &GroupPoint) -> usize {
    comb_case(g).map(|(_, t)| t).unwrap_or(TTS)
}

/// The unique Ω_↔ configuration with (⊤,⊤) at the identity: (no lamps at
/// or above the marker, no lamps below it).
pub fn lr_symbol(g: &GroupPoint) -> usize {
    let above = g.lamps().iter().all(|&k| k < g.marker);
    let below = g.lamps().iter().all(|&k| k >= g.marker);
    (above as usize) * 2 + below as usize
}

/// Sea-level component of the unique seeded Ω configuration: the word
/// between height 0 and the marker decides the arrow.
pub fn sea_symbol(g: &GroupPoint) -> usize {
    let n = g.marker;
    if n == 0 {
        return SEA;
    }
    let (lo, hi) = if n > 0 { (0, n) } else { (n, 0) };
    let bits: Vec<u8> = (lo..hi).map(|k| g.digit(k)).collect();
    let up = n > 0;
    if bits.iter().all(|&b| b == 0) {
        if up {
            NW
        } else {
            SW
        }
    } else if bits.iter().all(|&b| b == 1) {
        if up {
            NE
        } else {
            SE
        }
    } else if up {
        N
    } else {
        S
    }
}

/// Symbol of the seeded Ω configuration, as an index into [`omega_full`].
pub fn omega_symbol(g: &GroupPoint) -> usize {
    lr_symbol(g) * 7 + sea_symbol(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamplighter::{evaluate_word, tetrahedron};

    #[test]
    fn sizes() {
        assert_eq!(comb().tiles.len(), 6);
        assert_eq!(omega_sea().alphabet.len(), 7);
        assert_eq!(omega_full().alphabet.len(), 28);
        assert_eq!(ray_left().allowed, vec![[0, 0, 0, 0], [0, 1, 1, 1], [1, 0, 1, 1]]);
        assert_eq!(ray_right().allowed, vec![[0, 0, 0, 0], [1, 1, 0, 1], [1, 1, 1, 0]]);
        assert!(matches!(builtin("nope"), Err(Error::UnknownName(_))));
        assert!(matches!(builtin("dl_ray:2:3"), Ok(Tileset::DlCell(_))));
    }

    #[test]
    fn comb_cases_on_words() {
        let case = |w: &str| comb_case(&evaluate_word(w).unwrap());
        assert_eq!(case("aaA"), Some((1, TAS)));
        assert_eq!(case("abb"), Some((2, TBS)));
        assert_eq!(case("BB"), Some((3, TDS)));
        assert_eq!(case("bbbA"), Some((4, TSS)));
        assert_eq!(case("bba"), Some((5, TTS)));
        assert_eq!(case("BA"), Some((6, TRS)));
        assert_eq!(case("babb"), None);
        // a^n b^m a^-m = a^(n+m) b^-m
        assert_eq!(case("bbAA"), Some((3, TDS)));
    }

    /// The closed-form configurations satisfy every cell of a tetrahedron.
    fn check_cells(t: &TetraSystem, sym: impl Fn(&GroupPoint) -> usize) {
        let w = tetrahedron(-3, 3).unwrap();
        for c in w.tetra_cells() {
            let q = c.map(|v| sym(&w.points[v]));
            assert!(t.contains(&q), "cell at {} = {:?}", w.points[c[0]], q);
        }
    }

    #[test]
    fn oracle_configurations_are_valid() {
        check_cells(&omega_lr(), lr_symbol);
        check_cells(&omega_sea(), sea_symbol);
        check_cells(&omega_full(), omega_symbol);
        check_cells(&ray_left(), |g| lr_symbol(g) / 2);
        check_cells(&ray_right(), |g| lr_symbol(g) % 2);
    }

    #[test]
    fn comb_configuration_matches_colours() {
        let w = crate::lamplighter::ball(5).unwrap();
        let ts = Tileset::Wang(comb());
        let x: Vec<usize> = w.points.iter().map(comb_tile).collect();
        assert!(ts.violations(&w, &x).is_empty());
    }
}
