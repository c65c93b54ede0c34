//! A small CDCL solver: two watched literals, first-UIP learning,
//! deterministic branching (lowest unassigned variable, positive polarity),
//! and solving under assumptions.

/// Internal literal: 2·var + (1 if negated).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: usize, positive: bool) -> Lit {
        Lit((var as u32) << 1 | (!positive) as u32)
    }

    /// From a signed 1-based DIMACS literal.
    pub fn from_dimacs(x: i32) -> Lit {
        Lit::new(x.unsigned_abs() as usize - 1, x > 0)
    }

    pub fn to_dimacs(self) -> i32 {
        let v = self.var() as i32 + 1;
        if self.positive() {
            v
        } else {
            -v
        }
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    /// A total model, indexed by 0-based variable.
    Sat(Vec<bool>),
    Unsat,
    /// The conflict budget ran out.
    Unknown,
}

const UNDEF: i8 = -1;

#[derive(Clone, Debug)]
pub struct Solver {
    nvars: usize,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    value: Vec<i8>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    next_var: usize,
    ok: bool,
    seen: Vec<bool>,
    pub conflicts: u64,
    pub decisions: u64,
}

impl Solver {
    pub fn new(nvars: usize) -> Solver {
        Solver {
            nvars,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * nvars],
            value: vec![UNDEF; nvars],
            level: vec![0; nvars],
            reason: vec![None; nvars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            next_var: 0,
            ok: true,
            seen: vec![false; nvars],
            conflicts: 0,
            decisions: 0,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Allocates a fresh variable and returns its 0-based index.
    pub fn new_var(&mut self) -> usize {
        let v = self.nvars;
        self.nvars += 1;
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.value.push(UNDEF);
        self.level.push(0);
        self.reason.push(None);
        self.seen.push(false);
        v
    }

    fn lit_value(&self, l: Lit) -> i8 {
        let v = self.value[l.var()];
        if v == UNDEF {
            UNDEF
        } else {
            (v == 1) as i8 ^ (!l.positive()) as i8
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = l.var();
        self.value[v] = l.positive() as i8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn backtrack(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let start = self.trail_lim[lvl];
        for i in (start..self.trail.len()).rev() {
            let v = self.trail[i].var();
            self.value[v] = UNDEF;
            self.reason[v] = None;
            self.next_var = self.next_var.min(v);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(lvl);
        self.qhead = start;
    }

    /// Adds a clause of DIMACS literals. Returns false once the formula is
    /// known unsatisfiable.
    pub fn add_clause(&mut self, lits: &[i32]) -> bool {
        let lits: Vec<Lit> = lits.iter().map(|&x| Lit::from_dimacs(x)).collect();
        self.add_lits(lits)
    }

    pub fn add_lits(&mut self, mut lits: Vec<Lit>) -> bool {
        if !self.ok {
            return false;
        }
        self.backtrack(0);
        for l in &lits {
            while l.var() >= self.nvars {
                self.new_var();
            }
        }
        lits.sort();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        if lits.iter().any(|&l| self.lit_value(l) == 1) {
            return true;
        }
        lits.retain(|&l| self.lit_value(l) != 0);
        match lits.len() {
            0 => {
                self.ok = false;
                false
            }
            1 => {
                self.enqueue(lits[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
                self.ok
            }
            _ => {
                self.attach(lits);
                true
            }
        }
    }

    fn attach(&mut self, c: Vec<Lit>) -> usize {
        let ci = self.clauses.len();
        self.watches[c[0].idx()].push(ci);
        self.watches[c[1].idx()].push(ci);
        self.clauses.push(c);
        ci
    }

    /// Unit propagation; returns a conflicting clause index.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let falsified = !p;
            let mut ws = std::mem::take(&mut self.watches[falsified.idx()]);
            let mut i = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self.value[first.var()] != UNDEF && (self.value[first.var()] == 1) == first.positive() {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let l = c[k];
                    let lv = self.value[l.var()];
                    if lv == UNDEF || (lv == 1) == l.positive() {
                        c.swap(1, k);
                        let nw = c[1];
                        self.watches[nw.idx()].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                if self.lit_value(first) == 0 {
                    conflict = Some(ci);
                    break;
                }
                self.enqueue(first, Some(ci));
                i += 1;
            }
            let rest = std::mem::take(&mut self.watches[falsified.idx()]);
            ws.extend(rest);
            self.watches[falsified.idx()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    /// First-UIP learning: the learnt clause (asserting literal first) and
    /// the backjump level.
    fn analyze(&mut self, mut confl: usize) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut counter = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let dl = self.decision_level();
        loop {
            let c = self.clauses[confl].clone();
            let start = if p.is_some() { 1 } else { 0 };
            for &q in &c[start..] {
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] >= dl {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var()] {
                    break;
                }
            }
            let lit = self.trail[idx];
            p = Some(lit);
            self.seen[lit.var()] = false;
            counter -= 1;
            if counter == 0 {
                break;
            }
            confl = self.reason[lit.var()].expect("non-decision literal has a reason");
        }
        learnt[0] = !p.unwrap();
        for l in &learnt[1..] {
            self.seen[l.var()] = false;
        }
        let mut bt = 0;
        if learnt.len() > 1 {
            let mut mi = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var()] > self.level[learnt[mi].var()] {
                    mi = i;
                }
            }
            learnt.swap(1, mi);
            bt = self.level[learnt[1].var()];
        }
        (learnt, bt)
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while self.next_var < self.nvars {
            if self.value[self.next_var] == UNDEF {
                return Some(Lit::new(self.next_var, true));
            }
            self.next_var += 1;
        }
        None
    }

    pub fn solve(&mut self) -> SolveResult {
        self.solve_limited(&[], None)
    }

    pub fn solve_with(&mut self, assumptions: &[Lit]) -> SolveResult {
        self.solve_limited(assumptions, None)
    }

    /// Solves under assumptions with an optional conflict budget. Learnt
    /// clauses are kept across calls.
    pub fn solve_limited(&mut self, assumptions: &[Lit], max_conflicts: Option<u64>) -> SolveResult {
        if !self.ok {
            return SolveResult::Unsat;
        }
        for a in assumptions {
            while a.var() >= self.nvars {
                self.new_var();
            }
        }
        self.backtrack(0);
        if self.propagate().is_some() {
            self.ok = false;
            return SolveResult::Unsat;
        }
        let start = self.conflicts;
        let result = loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    break SolveResult::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.backtrack(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let l0 = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(l0, Some(ci));
                }
                if max_conflicts.is_some_and(|m| self.conflicts - start >= m) {
                    break SolveResult::Unknown;
                }
                continue;
            }
            let dl = self.decision_level();
            let next = if dl < assumptions.len() {
                let a = assumptions[dl];
                match self.lit_value(a) {
                    1 => {
                        self.trail_lim.push(self.trail.len());
                        continue;
                    }
                    0 => break SolveResult::Unsat,
                    _ => a,
                }
            } else {
                match self.pick_branch() {
                    Some(l) => l,
                    None => {
                        let model = self.value.iter().map(|&v| v == 1).collect();
                        break SolveResult::Sat(model);
                    }
                }
            };
            self.decisions += 1;
            self.trail_lim.push(self.trail.len());
            self.enqueue(next, None);
        };
        self.backtrack(0);
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(clauses: &[Vec<i32>], model: &[bool]) -> bool {
        clauses.iter().all(|c| c.iter().any(|&x| model[x.unsigned_abs() as usize - 1] == (x > 0)))
    }

    fn brute(n: usize, clauses: &[Vec<i32>]) -> bool {
        (0..1u32 << n).any(|m| {
            let model: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
            check(clauses, &model)
        })
    }

    #[test]
    fn trivial_cases() {
        let mut s = Solver::new(0);
        assert_eq!(s.solve(), SolveResult::Sat(vec![]));
        let mut s = Solver::new(1);
        s.add_clause(&[1]);
        s.add_clause(&[-1]);
        assert_eq!(s.solve(), SolveResult::Unsat);
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 4 pigeons, 3 holes
        let var = |p: i32, h: i32| p * 3 + h + 1;
        let mut s = Solver::new(12);
        for p in 0..4 {
            s.add_clause(&[var(p, 0), var(p, 1), var(p, 2)]);
        }
        for h in 0..3 {
            for p in 0..4 {
                for q in p + 1..4 {
                    s.add_clause(&[-var(p, h), -var(q, h)]);
                }
            }
        }
        assert_eq!(s.solve(), SolveResult::Unsat);
    }

    #[test]
    fn assumptions_are_temporary() {
        let mut s = Solver::new(2);
        s.add_clause(&[1, 2]);
        assert_eq!(s.solve_with(&[Lit::from_dimacs(-1), Lit::from_dimacs(-2)]), SolveResult::Unsat);
        assert!(matches!(s.solve_with(&[Lit::from_dimacs(-1)]), SolveResult::Sat(m) if m == vec![false, true]));
        assert!(matches!(s.solve(), SolveResult::Sat(_)));
    }

    #[test]
    fn random_3sat_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=10);
            let m = rng.gen_range(0..=45);
            let clauses: Vec<Vec<i32>> = (0..m)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = rng.gen_range(1..=n) as i32;
                            if rng.gen_bool(0.5) {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect()
                })
                .collect();
            let mut s = Solver::new(n);
            for c in &clauses {
                s.add_clause(c);
            }
            match s.solve() {
                SolveResult::Sat(model) => assert!(check(&clauses, &model)),
                SolveResult::Unsat => assert!(!brute(n, &clauses)),
                SolveResult::Unknown => unreachable!(),
            }
        }
    }
}
