//! Direct set-theoretic computation of axiom and scheme truth values in `V_k`.
//!
//! Nothing here goes through the formula evaluator. Every quantifier is read
//! relativized to `V_k`, and because `V_k` is transitive, "some `Y` in `V_k`
//! has exactly the members `T` (taken from `V_k`)" holds iff the set `T` itself
//! has rank below `k`.

use fast_core::hf::{canonical, v_universe, HfSet};

pub struct Universe {
    pub k: usize,
    pub sets: Vec<HfSet>,
}

impl Universe {
    pub fn new(k: usize) -> Self {
        Universe { k, sets: v_universe(k).unwrap() }
    }

    pub fn has(&self, x: &HfSet) -> bool {
        x.rank() < self.k
    }

    /// Whether the collection `t` (a subset of the universe) is an element.
    pub fn collects(&self, t: impl IntoIterator<Item = HfSet>) -> bool {
        self.has(&canonical(t))
    }
}

/// The unique `w` satisfying the relational two-tuple condition inside the
/// universe: its members are `x` and, when it is in the universe, `{x, y}`.
/// Outside the universe `{x, y}` cannot be a member, so `w` degenerates to `{x}`.
pub fn tuple(u: &Universe, x: &HfSet, y: &HfSet) -> HfSet {
    let pair = canonical([x.clone(), y.clone()]);
    if u.has(&pair) {
        canonical([x.clone(), pair])
    } else {
        canonical([x.clone()])
    }
}

fn subset(a: &HfSet, b: &HfSet) -> bool {
    a.elements().iter().all(|e| b.contains(e))
}

/// `f` is a function on `dom`: only tuples with first component in `dom`,
/// and exactly one image in the universe for each element of `dom`.
fn is_function_on(u: &Universe, f: &HfSet, dom: &HfSet) -> bool {
    let only_tuples = f.elements().iter().all(|p| {
        dom.elements().iter().any(|x| u.sets.iter().any(|y| tuple(u, x, y) == *p))
    });
    only_tuples
        && dom
            .elements()
            .iter()
            .all(|x| u.sets.iter().filter(|y| f.contains(&tuple(u, x, y))).count() == 1)
}

pub fn ext(u: &Universe) -> bool {
    u.sets.iter().all(|x| u.sets.iter().all(|y| x == y || x.elements() != y.elements()))
}

pub fn empty(u: &Universe) -> bool {
    u.sets.iter().any(|x| x.is_empty())
}

pub fn sum(u: &Universe) -> bool {
    u.sets.iter().all(|x| u.collects(x.elements().iter().flat_map(|w| w.elements().iter().cloned())))
}

pub fn pow(u: &Universe) -> bool {
    u.sets.iter().all(|x| u.collects(u.sets.iter().filter(|z| subset(z, x)).cloned()))
}

pub fn inf(u: &Universe) -> bool {
    u.sets.iter().any(|x| {
        x.elements().iter().any(|e| e.is_empty())
            && x.elements().iter().all(|e| x.contains(&HfSet::singleton(e.clone())))
    })
}

pub fn reg(u: &Universe) -> bool {
    u.sets.iter().all(|x| x.is_empty() || x.elements().iter().any(|y| y.elements().iter().all(|z| !x.contains(z))))
}

pub fn diff(u: &Universe) -> bool {
    u.sets.iter().all(|x| u.sets.iter().all(|y| u.collects(x.elements().iter().filter(|z| !y.contains(z)).cloned())))
}

pub fn prod(u: &Universe) -> bool {
    u.sets.iter().all(|x| {
        u.sets.iter().all(|y| {
            let tuples = x
                .elements()
                .iter()
                .flat_map(|a| y.elements().iter().map(move |b| tuple(u, a, b)))
                .filter(|t| u.has(t));
            u.collects(tuples)
        })
    })
}

pub fn im(u: &Universe) -> bool {
    u.sets.iter().all(|x| {
        u.sets.iter().filter(|f| is_function_on(u, f, x)).all(|f| {
            let image = u.sets.iter().filter(|y| x.elements().iter().any(|a| f.contains(&tuple(u, a, y)))).cloned();
            u.collects(image)
        })
    })
}

pub fn rev(u: &Universe) -> bool {
    u.sets.iter().all(|x| {
        u.sets.iter().filter(|f| is_function_on(u, f, x)).all(|f| {
            u.sets.iter().all(|y| u.collects(x.elements().iter().filter(|a| f.contains(&tuple(u, a, y))).cloned()))
        })
    })
}

/// Calls `f` on every map from `m` labels into the universe (as index
/// lists) until it returns false.
fn all_families(u: &Universe, m: usize, mut f: impl FnMut(Vec<HfSet>) -> bool) -> bool {
    let n = u.sets.len();
    if n == 0 {
        return m > 0 || f(Vec::new());
    }
    let mut g = vec![0usize; m];
    loop {
        if !f(g.iter().map(|&k| u.sets[k].clone()).collect()) {
            return false;
        }
        let mut p = 0;
        while p < m {
            g[p] += 1;
            if g[p] < n {
                break;
            }
            g[p] = 0;
            p += 1;
        }
        if p == m {
            return true;
        }
    }
}

/// Every family over every `X` collects into a set.
pub fn fam(u: &Universe) -> bool {
    u.sets.iter().all(|x| all_families(u, x.len(), |g| u.collects(g)))
}

/// No family over any `X` collects into a set that contains every set.
pub fn no_universal_set(u: &Universe) -> bool {
    u.sets.iter().all(|x| {
        all_families(u, x.len(), |g| {
            let z = canonical(g);
            !(u.has(&z) && u.sets.iter().all(|y| z.contains(y)))
        })
    })
}

pub type AxiomCheck = fn(&Universe) -> bool;

pub const AXIOMS: [(&str, AxiomCheck); 11] = [
    ("EXT", ext),
    ("EMPTY", empty),
    ("SUM", sum),
    ("POW", pow),
    ("INF", inf),
    ("REG", reg),
    ("DIFF", diff),
    ("PROD", prod),
    ("IM", im),
    ("REV", rev),
    ("FAM", fam),
];

/// Native reading of a two-place parameter formula `phi(x, y)`.
pub type Relation = fn(&HfSet, &HfSet) -> bool;

/// Scheme parameters used for the MAIN instances, with their native readings.
pub const MAIN_PARAMS: [(&str, Relation); 5] = [
    ("y = x", |x, y| x == y),
    ("A w . ~ w in y", |_, y| y.is_empty()),
    ("A w . (w in y <-> w in x)", |x, y| x == y),
    ("A w . (w in y <-> w = x)", |x, y| *y == HfSet::singleton(x.clone())),
    ("y = x /\\ ~ y = x", |_, _| false),
];

fn premise(u: &Universe, x_set: &HfSet, phi: Relation) -> bool {
    x_set.elements().iter().all(|x| u.sets.iter().filter(|y| phi(x, y)).count() == 1)
}

/// MAIN: whenever `phi` is functional on `X`, some function on `X` in the
/// universe has exactly the graph of `phi`. Searched over all candidate `f`.
pub fn main_instance(u: &Universe, phi: Relation) -> bool {
    u.sets.iter().all(|x_set| {
        !premise(u, x_set, phi)
            || u.sets.iter().any(|f| {
                is_function_on(u, f, x_set)
                    && x_set
                        .elements()
                        .iter()
                        .all(|x| u.sets.iter().all(|y| f.contains(&tuple(u, x, y)) == phi(x, y)))
            })
    })
}

/// SUB: whenever `phi` is functional on `X`, its image collects into a set.
pub fn sub_instance(u: &Universe, phi: Relation) -> bool {
    u.sets.iter().all(|x_set| {
        !premise(u, x_set, phi)
            || u.collects(u.sets.iter().filter(|y| x_set.elements().iter().any(|x| phi(x, y))).cloned())
    })
}

pub fn union(x: &HfSet) -> HfSet {
    canonical(x.elements().iter().flat_map(|w| w.elements().iter().cloned()))
}

/// SUB parameters with their native readings.
pub const SUB_PARAMS: [(&str, Relation); 6] = [
    ("y = x", |x, y| x == y),
    ("A w . ~ w in y", |_, y| y.is_empty()),
    ("y = x /\\ ~ y = x", |_, _| false),
    ("A w . (w in y <-> w in x)", |x, y| x == y),
    ("A w . (w in y <-> E v . (v in x /\\ w in v))", |x, y| *y == union(x)),
    ("A w . (w in y <-> w = x)", |x, y| *y == HfSet::singleton(x.clone())),
];
