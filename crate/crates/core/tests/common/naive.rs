//! Direct transcription of the satisfaction clauses over total
//! valuations, with `[]` enumerating every valuation of every variable of
//! the formula at every world. Exponential; for small structures only.

use std::collections::BTreeMap;

use folbox::kripke::{ElemId, Structure, WorldId};
use folbox::syntax::{Formula, PredSym, Var};

pub type Total = BTreeMap<(WorldId, Var), ElemId>;

pub fn all_valuations(s: &Structure, vars: &[Var]) -> Vec<Total> {
    let slots: Vec<(WorldId, Var)> =
        s.worlds().flat_map(|w| vars.iter().map(move |x| (w, x.clone()))).collect();
    let mut out = vec![Total::new()];
    for (w, x) in slots {
        out = out
            .into_iter()
            .flat_map(|v| {
                let x = x.clone();
                s.domain(w).iter().map(move |&e| {
                    let mut v = v.clone();
                    v.insert((w, x.clone()), e);
                    v
                })
            })
            .collect();
    }
    out
}

pub fn eval(s: &Structure, vars: &[Var], v: &Total, w: WorldId, a: &Formula) -> bool {
    match a {
        Formula::Atom(p, args) => {
            let t: Vec<ElemId> = args.iter().map(|x| v[&(w, x.clone())]).collect();
            s.holds(&PredSym { name: p.clone(), arity: args.len() }, w, &t)
        }
        Formula::Eq(x, y) => v[&(w, x.clone())] == v[&(w, y.clone())],
        Formula::Not(b) => !eval(s, vars, v, w, b),
        Formula::Impl(b, c) => !eval(s, vars, v, w, b) || eval(s, vars, v, w, c),
        Formula::And(b, c) => eval(s, vars, v, w, b) && eval(s, vars, v, w, c),
        Formula::Or(b, c) => eval(s, vars, v, w, b) || eval(s, vars, v, w, c),
        Formula::Iff(b, c) => eval(s, vars, v, w, b) == eval(s, vars, v, w, c),
        Formula::Forall(x, b) | Formula::Exists(x, b) => {
            let universal = matches!(a, Formula::Forall(..));
            let mut hits = s.domain(w).iter().map(|&e| {
                let mut v2 = v.clone();
                v2.insert((w, x.clone()), e);
                eval(s, vars, &v2, w, b)
            });
            if universal {
                hits.all(|r| r)
            } else {
                hits.any(|r| r)
            }
        }
        Formula::Box(b) | Formula::Dia(b) => {
            let universal = matches!(a, Formula::Box(..));
            let vals = all_valuations(s, vars);
            let mut hits = vals.iter().flat_map(|v2| s.worlds().map(move |w2| (v2, w2)));
            if universal {
                hits.all(|(v2, w2)| eval(s, vars, v2, w2, b))
            } else {
                hits.any(|(v2, w2)| eval(s, vars, v2, w2, b))
            }
        }
    }
}
