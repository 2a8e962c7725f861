//! Exhaustive classical validity for formulas over one unary predicate `P`
//! and the variables `x`, `y`: truth tables over every model with at most
//! `MAX_SIZE` elements and every assignment of `x` and `y`.

use folbox::syntax::{Formula, Var};

pub const MAX_SIZE: usize = 5;

pub struct Points {
    /// (size, extension of P as a bit mask, offset of its first point)
    models: Vec<(usize, u32, usize)>,
    pub len: usize,
}

impl Points {
    pub fn new() -> Self {
        let mut models = Vec::new();
        let mut len = 0;
        for n in 1..=MAX_SIZE {
            for mask in 0..(1u32 << n) {
                models.push((n, mask, len));
                len += n * n;
            }
        }
        Points { models, len }
    }

    fn words(&self) -> usize {
        self.len.div_ceil(64)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Table(Vec<u64>);

impl Table {
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn all(&self, pts: &Points) -> bool {
        (0..pts.len).all(|i| self.get(i))
    }
}

fn tabulate(pts: &Points, f: impl Fn(usize, u32, usize, usize) -> bool) -> Table {
    let mut t = Table(vec![0; pts.words()]);
    for &(n, mask, off) in &pts.models {
        for a in 0..n {
            for b in 0..n {
                if f(n, mask, a, b) {
                    t.set(off + a * n + b);
                }
            }
        }
    }
    t
}

pub fn atom_table(pts: &Points, a: &Formula) -> Table {
    let x = Var::new("x");
    let value = |v: &Var, a: usize, b: usize| if *v == x { a } else { b };
    match a {
        Formula::Atom(_, args) => tabulate(pts, |_, mask, a, b| mask >> value(&args[0], a, b) & 1 == 1),
        Formula::Eq(u, v) => tabulate(pts, |_, _, a, b| value(u, a, b) == value(v, a, b)),
        _ => panic!("not an atom"),
    }
}

pub fn not(t: &Table) -> Table {
    Table(t.0.iter().map(|w| !w).collect())
}

pub fn implies(s: &Table, t: &Table) -> Table {
    Table(s.0.iter().zip(&t.0).map(|(a, b)| !a | b).collect())
}

/// `forall x` (`on_x`) or `forall y` over the body's table.
pub fn forall(pts: &Points, t: &Table, on_x: bool) -> Table {
    let mut out = Table(vec![0; pts.words()]);
    for &(n, _, off) in &pts.models {
        for a in 0..n {
            for b in 0..n {
                let all = (0..n).all(|c| {
                    let (a2, b2) = if on_x { (c, b) } else { (a, c) };
                    t.get(off + a2 * n + b2)
                });
                if all {
                    out.set(off + a * n + b);
                }
            }
        }
    }
    out
}
