//! Exact tiling counts by variable elimination over the constraint network,
//! for windows too large for model enumeration.

use std::collections::{BTreeSet, HashMap};

use super::encode::resolve_seeds;
use crate::error::{Error, Result};
use crate::lamplighter::Window;
use crate::tiles::{Constraint, DlCellSystem, Seed, Tileset};

/// Largest number of nonzero entries of an intermediate table.
pub const COUNT_TABLE_CAP: usize = 1 << 24;

/// A nonnegative function of a few tile variables, stored sparsely: the
/// nonzero values by assignment of `vars` (sorted).
#[derive(Clone, Debug)]
struct Factor {
    vars: Vec<usize>,
    values: HashMap<Vec<usize>, u128>,
}

impl Factor {
    /// 0/1 factor of a row table over `scope` (which may repeat a vertex).
    fn from_rows(scope: &[usize], rows: &[Vec<usize>]) -> Factor {
        let vars: Vec<usize> = scope.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let mut values = HashMap::new();
        'rows: for row in rows {
            let mut val = vec![usize::MAX; vars.len()];
            for (k, &v) in scope.iter().enumerate() {
                let i = vars.binary_search(&v).unwrap();
                if val[i] != usize::MAX && val[i] != row[k] {
                    continue 'rows;
                }
                val[i] = row[k];
            }
            values.insert(val, 1);
        }
        Factor { vars, values }
    }

    fn join(&self, other: &Factor) -> Result<Factor> {
        let vars: Vec<usize> = self.vars.iter().chain(&other.vars).copied().collect::<BTreeSet<_>>().into_iter().collect();
        let shared: Vec<(usize, usize)> =
            self.vars.iter().enumerate().filter_map(|(i, v)| other.vars.iter().position(|u| u == v).map(|j| (i, j))).collect();
        let mut by_key: HashMap<Vec<usize>, Vec<(&Vec<usize>, u128)>> = HashMap::new();
        for (a, &x) in &other.values {
            by_key.entry(shared.iter().map(|&(_, j)| a[j]).collect()).or_default().push((a, x));
        }
        let src: Vec<(bool, usize)> = vars
            .iter()
            .map(|v| match self.vars.iter().position(|u| u == v) {
                Some(i) => (true, i),
                None => (false, other.vars.iter().position(|u| u == v).unwrap()),
            })
            .collect();
        let mut values = HashMap::new();
        for (a, &x) in &self.values {
            let key: Vec<usize> = shared.iter().map(|&(i, _)| a[i]).collect();
            for &(b, y) in by_key.get(&key).map(|v| v.as_slice()).unwrap_or(&[]) {
                let val: Vec<usize> = src.iter().map(|&(mine, i)| if mine { a[i] } else { b[i] }).collect();
                values.insert(val, x * y);
                if values.len() > COUNT_TABLE_CAP {
                    return Err(Error::capacity("count table entries", COUNT_TABLE_CAP));
                }
            }
        }
        Ok(Factor { vars, values })
    }

    /// Sums out `x`, which ranges over `d` values (absent means free).
    fn sum_out(&self, x: usize, d: usize) -> Factor {
        let Some(i) = self.vars.iter().position(|&v| v == x) else {
            let values = self.values.iter().map(|(a, &v)| (a.clone(), v * d as u128)).collect();
            return Factor { vars: self.vars.clone(), values };
        };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut values: HashMap<Vec<usize>, u128> = HashMap::new();
        for (a, &v) in &self.values {
            let mut k = a.clone();
            k.remove(i);
            *values.entry(k).or_default() += v;
        }
        Factor { vars, values }
    }

    fn scalar(&self) -> u128 {
        self.values.get(&Vec::new()).copied().unwrap_or(0)
    }
}

fn ray_rows(ds: &DlCellSystem, lower: &[usize], upper: &[usize]) -> Vec<Vec<usize>> {
    let n = lower.len() + upper.len();
    (0..1usize << n)
        .map(|m| (0..n).map(|i| (m >> i) & 1).collect::<Vec<usize>>())
        .filter(|r| ds.allows(&r[..lower.len()], &r[lower.len()..]))
        .collect()
}

/// Number of assignments of `n` variables over `0..d` satisfying every
/// (scope, allowed rows) table, by min-degree variable elimination.
pub fn count_tables(n: usize, d: usize, tables: &[(Vec<usize>, Vec<Vec<usize>>)]) -> Result<u128> {
    let mut factors: Vec<Factor> = tables.iter().map(|(s, rows)| Factor::from_rows(s, rows)).collect();
    let mut result: u128 = 1;
    let mut alive = vec![true; n];
    for _ in 0..n {
        let mut nbrs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for f in &factors {
            for &v in &f.vars {
                nbrs[v].extend(f.vars.iter().copied().filter(|&u| u != v));
            }
        }
        let x = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (nbrs[v].len(), v)).unwrap();
        alive[x] = false;
        let (mine, rest): (Vec<Factor>, Vec<Factor>) = factors.into_iter().partition(|f| f.vars.contains(&x));
        factors = rest;
        let Some((first, others)) = mine.split_first() else {
            result *= d as u128;
            continue;
        };
        let mut prod = first.clone();
        for f in others {
            prod = prod.join(f)?;
        }
        let f = prod.sum_out(x, d);
        if f.vars.is_empty() {
            result *= f.scalar();
        } else {
            factors.push(f);
        }
    }
    for f in factors {
        result *= f.scalar();
    }
    Ok(result)
}

/// Number of tilings of `w` by `ts` with the tileset's seeds and `seeds`.
pub fn count_exact(w: &Window, ts: &Tileset, seeds: &[Seed]) -> Result<u128> {
    let d = ts.ntiles();
    let mut tables = Vec::new();
    for c in ts.constraints(w)? {
        tables.push(match c {
            Constraint::Table { scope, allowed } => (scope, allowed.as_ref().clone()),
            Constraint::Ray { lower, upper } => {
                let Tileset::DlCell(ds) = ts else { unreachable!("ray constraints come from DL systems") };
                let scope: Vec<usize> = lower.iter().chain(&upper).copied().collect();
                let rows = ray_rows(ds, &lower, &upper);
                (scope, rows)
            }
        });
    }
    let mut all = ts.seeds().to_vec();
    all.extend(seeds.iter().cloned());
    for (v, t) in resolve_seeds(w, &all)? {
        if t >= d {
            return Err(Error::Invalid(format!("seed tile {t} out of range")));
        }
        tables.push((vec![v], vec![vec![t]]));
    }
    count_tables(w.len(), d, &tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamplighter::{ball, dl_window, tetrahedron};
    use crate::sat::{count, encode};
    use crate::tiles::builtin::{self, comb, TAS};
    use crate::tiles::{wang_to_tetra, WangTileset};

    fn by_enumeration(w: &Window, ts: &Tileset, seeds: &[Seed]) -> u128 {
        count(&encode(w, ts, seeds).unwrap(), 1_000_000).unwrap() as u128
    }

    #[test]
    fn agrees_with_enumeration() {
        let w = ball(2).unwrap();
        let seed = [Seed { word: "e".into(), tile: TAS }];
        let c = Tileset::Wang(comb());
        assert_eq!(count_exact(&w, &c, &seed).unwrap(), by_enumeration(&w, &c, &seed));
        let t = tetrahedron(-1, 1).unwrap();
        let lr = builtin::builtin("omega_lr").unwrap();
        assert_eq!(count_exact(&t, &lr, &[]).unwrap(), by_enumeration(&t, &lr, &[]));
        let dl = dl_window(2, 3, 0, 2).unwrap();
        let ray = builtin::builtin("dl_ray:2:3").unwrap();
        assert_eq!(count_exact(&dl, &ray, &[]).unwrap(), by_enumeration(&dl, &ray, &[]));
    }

    #[test]
    fn free_and_empty() {
        let w = ball(1).unwrap();
        let free = WangTileset::new(vec!["x".into()], vec![[0; 4]; 3], vec!["p".into(), "q".into(), "r".into()]).unwrap();
        assert_eq!(count_exact(&w, &Tileset::Wang(free), &[]).unwrap(), 3u128.pow(5));
        let none = WangTileset::new(vec![], vec![], vec![]).unwrap();
        assert_eq!(count_exact(&w, &Tileset::Wang(none), &[]).unwrap(), 0);
    }

    #[test]
    fn conversion_preserves_counts_on_tetrahedra() {
        let w = tetrahedron(0, 2).unwrap();
        let c = comb();
        let a = count_exact(&w, &Tileset::Wang(c.clone()), &[]).unwrap();
        let b = count_exact(&w, &Tileset::Tetra(wang_to_tetra(&c)), &[]).unwrap();
        assert_eq!(a, b);
    }
}
