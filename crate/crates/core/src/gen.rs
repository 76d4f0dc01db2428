//! Seeded random generation of well-formed formulas and small models.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ast::{var, well_formed, Formula, Index, Term, VarName};
use crate::hf::{v_universe, HfSet};
use crate::semantics::{Digraph, Model};

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub max_depth: usize,
    /// Free set variables that may occur.
    pub free_vars: Vec<VarName>,
    /// Names for set binders; reuse produces shadowing.
    pub bound_vars: Vec<VarName>,
    pub families: bool,
    /// Literal terms in atomic formulas (elements of `V_3`).
    pub literals: bool,
    /// Largest literal index set.
    pub max_index_len: usize,
    /// Allow set variables as index sets.
    pub var_index_sets: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 4,
            free_vars: vec![var("a"), var("b")],
            bound_vars: vec![var("x"), var("y"), var("z")],
            families: true,
            literals: true,
            max_index_len: 3,
            var_index_sets: true,
        }
    }
}

impl GenConfig {
    /// First-order formulas only.
    pub fn first_order() -> Self {
        GenConfig { families: false, ..GenConfig::default() }
    }
}

const FAMILY_NAMES: [&str; 2] = ["u", "v"];
const INDEX_NAMES: [&str; 2] = ["i", "j"];

#[derive(Default, Clone)]
struct Scope {
    sets: Vec<VarName>,
    families: Vec<(VarName, Term)>,
    indices: Vec<(VarName, Term)>,
}

pub struct FormulaGen {
    rng: ChaCha8Rng,
    pub config: GenConfig,
    small: Vec<HfSet>,
}

impl FormulaGen {
    pub fn new(seed: u64, config: GenConfig) -> Self {
        FormulaGen { rng: ChaCha8Rng::seed_from_u64(seed), config, small: v_universe(3).expect("V_3") }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A random element of `V_3`.
    pub fn small_set(&mut self) -> HfSet {
        self.small.choose(&mut self.rng).cloned().expect("nonempty")
    }

    /// A random literal index set with at most `max_index_len` elements of `V_3`.
    pub fn index_literal(&mut self) -> HfSet {
        let n = self.rng.gen_range(0..=self.config.max_index_len.min(self.small.len()));
        let picked: Vec<HfSet> = self.small.choose_multiple(&mut self.rng, n).cloned().collect();
        HfSet::canonical(picked)
    }

    /// A random well-formed formula.
    pub fn formula(&mut self) -> Formula {
        self.formula_with_depth(self.config.max_depth)
    }

    pub fn formula_with_depth(&mut self, depth: usize) -> Formula {
        loop {
            let mut scope = Scope { sets: self.config.free_vars.clone(), ..Scope::default() };
            let phi = self.gen(depth, &mut scope);
            if well_formed(&phi).is_ok() {
                return phi;
            }
        }
    }

    /// A random well-formed `fam u[i] in set . B` whose body has depth `depth`.
    pub fn family_binder(&mut self, set: Term, depth: usize) -> Formula {
        loop {
            let mut scope = Scope { sets: self.config.free_vars.clone(), ..Scope::default() };
            let (u, i) = (var("u"), var("i"));
            scope.families.push((u.clone(), set.clone()));
            if self.rng.gen_bool(0.7) {
                scope.indices.push((i.clone(), set.clone()));
            }
            let body = if self.rng.gen_bool(0.5) {
                // Force an index quantifier so the family is actually applied.
                let j = var("j");
                scope.indices.push((j.clone(), set.clone()));
                let inner = self.gen(depth.saturating_sub(1), &mut scope);
                if self.rng.gen_bool(0.5) {
                    Formula::exists_index(j, set.clone(), inner)
                } else {
                    Formula::forall_index(j, set.clone(), inner)
                }
            } else {
                self.gen(depth, &mut scope)
            };
            let phi = Formula::forall_family(u, i, set.clone(), body);
            if well_formed(&phi).is_ok() {
                return phi;
            }
        }
    }

    /// A random term usable at the top level (a free variable or a literal).
    pub fn closed_term(&mut self) -> Term {
        if self.config.literals && (self.config.free_vars.is_empty() || self.rng.gen_bool(0.3)) {
            Term::Lit(self.small_set())
        } else {
            Term::Var(self.config.free_vars.choose(&mut self.rng).cloned().expect("free variable pool"))
        }
    }

    fn term(&mut self, scope: &Scope) -> Option<Term> {
        let mut kinds = Vec::new();
        if !scope.sets.is_empty() {
            kinds.push(0);
            kinds.push(0);
        }
        if self.config.literals {
            kinds.push(1);
        }
        if !scope.families.is_empty() {
            kinds.push(2);
            kinds.push(2);
        }
        match *kinds.choose(&mut self.rng)? {
            0 => scope.sets.choose(&mut self.rng).cloned().map(Term::Var),
            1 => Some(Term::Lit(self.small_set())),
            _ => {
                let (family, set) = scope.families.choose(&mut self.rng).cloned()?;
                let matching: Vec<&VarName> = scope.indices.iter().filter(|(_, s)| *s == set).map(|(i, _)| i).collect();
                let index = if !matching.is_empty() && self.rng.gen_bool(0.75) {
                    Index::Var((*matching.choose(&mut self.rng)?).clone())
                } else {
                    match &set {
                        Term::Lit(l) if !l.is_empty() && self.rng.gen_bool(0.9) => {
                            Index::Const(l.elements().choose(&mut self.rng)?.clone())
                        }
                        _ => Index::Const(self.small_set()),
                    }
                };
                Some(Term::App { family, index })
            }
        }
    }

    fn atom(&mut self, scope: &mut Scope) -> Formula {
        match (self.term(scope), self.term(scope)) {
            (Some(a), Some(b)) => {
                if self.rng.gen_bool(0.5) {
                    Formula::mem(a, b)
                } else {
                    Formula::eq(a, b)
                }
            }
            _ => {
                let x = self.config.bound_vars.choose(&mut self.rng).cloned().unwrap_or_else(|| var("x"));
                scope.sets.push(x.clone());
                let body = self.atom(scope);
                scope.sets.pop();
                Formula::exists(x, body)
            }
        }
    }

    fn index_set(&mut self, scope: &Scope) -> Term {
        if self.config.var_index_sets && !scope.sets.is_empty() && self.rng.gen_bool(0.3) {
            Term::Var(scope.sets.choose(&mut self.rng).cloned().expect("nonempty"))
        } else {
            Term::Lit(self.index_literal())
        }
    }

    fn gen(&mut self, depth: usize, scope: &mut Scope) -> Formula {
        if depth == 0 {
            return self.atom(scope);
        }
        let mut kinds = vec![0, 0, 1, 1, 2, 3, 4, 5, 6, 6, 7, 7];
        if self.config.families {
            kinds.extend([8, 8]);
            if !scope.families.is_empty() {
                kinds.extend([9, 9, 9]);
            }
        }
        let d = depth - 1;
        match *kinds.choose(&mut self.rng).expect("nonempty") {
            0 => self.atom(scope),
            1 => Formula::not(self.gen(d, scope)),
            2 => Formula::and(self.gen(d, scope), self.gen(d, scope)),
            3 => Formula::or(self.gen(d, scope), self.gen(d, scope)),
            4 => Formula::implies(self.gen(d, scope), self.gen(d, scope)),
            5 => Formula::iff(self.gen(d, scope), self.gen(d, scope)),
            6 | 7 => {
                let x = self.config.bound_vars.choose(&mut self.rng).cloned().unwrap_or_else(|| var("x"));
                scope.sets.push(x.clone());
                let body = self.gen(d, scope);
                scope.sets.pop();
                if self.rng.gen_bool(0.5) {
                    Formula::forall(x, body)
                } else {
                    Formula::exists(x, body)
                }
            }
            8 => {
                let family = var(FAMILY_NAMES.choose(&mut self.rng).expect("nonempty"));
                let index_var = var(INDEX_NAMES.choose(&mut self.rng).expect("nonempty"));
                let set = self.index_set(scope);
                scope.families.push((family.clone(), set.clone()));
                let body = self.gen(d, scope);
                scope.families.pop();
                Formula::forall_family(family, index_var, set, body)
            }
            _ => {
                let (_, set) = scope.families.choose(&mut self.rng).cloned().expect("nonempty");
                let index_var = var(INDEX_NAMES.choose(&mut self.rng).expect("nonempty"));
                scope.indices.push((index_var.clone(), set.clone()));
                let body = self.gen(d, scope);
                scope.indices.pop();
                if self.rng.gen_bool(0.5) {
                    Formula::exists_index(index_var, set, body)
                } else {
                    Formula::forall_index(index_var, set, body)
                }
            }
        }
    }

    /// `V_k` for a random `k <= max_rank`, or a random digraph with at most
    /// `max_nodes` nodes.
    pub fn model(&mut self, max_rank: usize, max_nodes: usize) -> Model {
        if self.rng.gen_bool(0.5) {
            Model::vrank(self.rng.gen_range(0..=max_rank)).expect("small rank")
        } else {
            let n = self.rng.gen_range(0..=max_nodes);
            let mask = self.rng.gen_range(0..(1u64 << (n * n)));
            Model::Digraph(Digraph::from_mask(n, mask))
        }
    }
}
