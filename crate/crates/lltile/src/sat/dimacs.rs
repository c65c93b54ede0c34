//! DIMACS CNF export with the vertex-tile map in comment lines, and import
//! of models produced by external solvers.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::encode::CnfInstance;
use crate::error::{Error, Result};

/// DIMACS text: `c v <var> = <point> <tile>` comments, the `p cnf` header
/// and one 0-terminated clause per line.
pub fn export_dimacs(cnf: &CnfInstance) -> String {
    let mut s = String::new();
    for v in 0..cnf.nvertices {
        for t in 0..cnf.ntiles {
            let _ = writeln!(s, "c v {} = {} {}", cnf.var(v, t), cnf.vertex_names[v], cnf.tile_names[t]);
        }
    }
    let _ = writeln!(s, "p cnf {} {}", cnf.nvars, cnf.clauses.len());
    for c in &cnf.clauses {
        for x in c {
            let _ = write!(s, "{x} ");
        }
        s.push_str("0\n");
    }
    s
}

/// A parsed DIMACS file with its variable map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimacsFile {
    pub nvars: usize,
    pub clauses: Vec<Vec<i32>>,
    /// Variable → (point, tile name), from `c v` comments.
    pub var_map: BTreeMap<i32, (String, String)>,
}

pub fn parse_dimacs(text: &str) -> Result<DimacsFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    let mut var_map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("c v ") {
            let (var, rest) = rest.split_once(" = ").ok_or_else(|| Error::parse(ln, "malformed variable comment"))?;
            let (point, tile) = rest.rsplit_once(' ').ok_or_else(|| Error::parse(ln, "malformed variable comment"))?;
            let var: i32 = var.trim().parse().map_err(|_| Error::parse(ln, "bad variable number"))?;
            var_map.insert(var, (point.to_string(), tile.to_string()));
            continue;
        }
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p cnf") {
            let nums: Vec<usize> = rest
                .split_whitespace()
                .map(|x| x.parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(ln, "bad header"))?;
            match nums.as_slice() {
                [v, c] => header = Some((*v, *c)),
                _ => return Err(Error::parse(ln, "bad header")),
            }
            continue;
        }
        let (nv, _) = header.ok_or_else(|| Error::parse(ln, "clause before `p cnf` header"))?;
        for tok in line.split_whitespace() {
            let x: i32 = tok.parse().map_err(|_| Error::parse(ln, format!("bad literal `{tok}`")))?;
            if x == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else if x.unsigned_abs() as usize > nv {
                return Err(Error::parse(ln, format!("literal {x} exceeds {nv} variables")));
            } else {
                cur.push(x);
            }
        }
    }
    let (nvars, nc) = header.ok_or_else(|| Error::parse(0, "missing `p cnf` header"))?;
    if !cur.is_empty() {
        return Err(Error::parse(0, "unterminated clause"));
    }
    if clauses.len() != nc {
        return Err(Error::parse(0, format!("header announces {nc} clauses, found {}", clauses.len())));
    }
    Ok(DimacsFile { nvars, clauses, var_map })
}

/// Parses a solver model: `v`-prefixed lines (competition format) or bare
/// lists of signed literals; `s` and `c` lines are skipped. Returns None
/// for an `s UNSATISFIABLE` answer.
pub fn parse_model(text: &str, nvars: usize) -> Result<Option<Vec<bool>>> {
    let mut model = vec![false; nvars];
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if let Some(status) = line.strip_prefix('s') {
            match status.trim() {
                "SATISFIABLE" => continue,
                "UNSATISFIABLE" => return Ok(None),
                other => return Err(Error::parse(ln, format!("unknown status `{other}`"))),
            }
        }
        let body = line.strip_prefix('v').unwrap_or(line);
        for tok in body.split_whitespace() {
            let x: i32 = tok.parse().map_err(|_| Error::parse(ln, format!("malformed model literal `{tok}`")))?;
            if x == 0 {
                continue;
            }
            let v = x.unsigned_abs() as usize;
            if v > nvars {
                return Err(Error::parse(ln, format!("model literal {x} exceeds {nvars} variables")));
            }
            model[v - 1] = x > 0;
        }
    }
    Ok(Some(model))
}

/// Decodes an external model into a tiling of the instance's vertices.
pub fn import_solution(cnf: &CnfInstance, model_text: &str) -> Result<Option<Vec<usize>>> {
    match parse_model(model_text, cnf.nvars)? {
        None => Ok(None),
        Some(m) => cnf.decode(&m).map(Some),
    }
}

/// Model in competition output form.
pub fn format_model(model: &[bool]) -> String {
    let mut s = String::from("s SATISFIABLE\nv");
    for (i, &b) in model.iter().enumerate() {
        let v = i as i32 + 1;
        let _ = write!(s, " {}", if b { v } else { -v });
    }
    s.push_str(" 0\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamplighter::ball;
    use crate::sat::encode::{encode, solve, validate};
    use crate::sat::solver::{SolveResult, Solver};
    use crate::tiles::{builtin, Seed, Tileset};

    #[test]
    fn empty_instance() {
        let cnf = CnfInstance { nvars: 0, clauses: vec![], nvertices: 0, ntiles: 0, vertex_names: vec![], tile_names: vec![] };
        assert_eq!(export_dimacs(&cnf), "p cnf 0 0\n");
    }

    #[test]
    fn export_solve_import() {
        let w = ball(3).unwrap();
        let ts = Tileset::Wang(builtin::comb());
        let seeds = [Seed { word: "e".into(), tile: builtin::TAS }];
        let cnf = encode(&w, &ts, &seeds).unwrap();
        let text = export_dimacs(&cnf);
        let parsed = parse_dimacs(&text).unwrap();
        assert_eq!(parsed.clauses, cnf.clauses);
        assert_eq!(parsed.var_map.len(), cnf.nvertices * cnf.ntiles);
        // "external" solve of the parsed file
        let mut s = Solver::new(parsed.nvars);
        for c in &parsed.clauses {
            s.add_clause(c);
        }
        let SolveResult::Sat(m) = s.solve() else { panic!("comb on ball(3) is satisfiable") };
        let x = import_solution(&cnf, &format_model(&m)).unwrap().unwrap();
        assert!(validate(&w, &ts, &seeds, &x).unwrap().is_empty());
        assert_eq!(Some(x), solve(&cnf).unwrap());
    }

    #[test]
    fn malformed_model() {
        assert!(matches!(parse_model("v 1 x 0", 3), Err(Error::Parse { line: 1, .. })));
        assert_eq!(parse_model("s UNSATISFIABLE\n", 3).unwrap(), None);
    }
}
