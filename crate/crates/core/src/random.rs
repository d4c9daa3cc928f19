//! Seeded generators of small weight-graded instances for property tests
//! and benchmarks.
//!
//! Every basis element carries a weight in `{0, 1, 2}` and products only
//! connect `w_i + w_j = w_k`, so `diag(t^w)` is an automorphism of every
//! generated product and serves as the Yau twist.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{derivation_construction, GDStructure};
use crate::exactalg::{kernel_from_columns, Scalar};
use crate::superalgebra::{
    check_hom_associative, sign_flip, EvenMap, NamedEntry2, Parity, ProductTable, SuperAlgebra,
    SuperBasis, Vector,
};

/// A generated algebra with the weight of each basis element.
#[derive(Clone, Debug)]
pub struct Graded {
    pub algebra: SuperAlgebra,
    pub weights: Vec<i32>,
}

impl Graded {
    fn allowed(&self, i: usize, j: usize, k: usize) -> bool {
        let b = &self.algebra.basis;
        self.weights[i] + self.weights[j] == self.weights[k]
            && b.parity(i) + b.parity(j) == b.parity(k)
    }

    fn preserving(&self, i: usize, k: usize) -> bool {
        self.weights[i] == self.weights[k]
            && self.algebra.basis.parity(i) == self.algebra.basis.parity(k)
    }

    /// `diag(t^w)`.
    pub fn weight_twist(&self, t: i64) -> EvenMap {
        EvenMap::from_fn(&self.algebra.basis, |i| {
            let w = self.weights[i];
            let base = if w < 0 {
                Scalar::int(t).inv().expect("twist parameter is nonzero")
            } else {
                Scalar::int(t)
            };
            Vector::term(i, base.pow(w.unsigned_abs()))
        })
        .expect("diagonal maps are even")
    }

    /// Euler derivation `diag(w)`.
    pub fn euler(&self) -> EvenMap {
        EvenMap::from_fn(&self.algebra.basis, |i| {
            Vector::term(i, Scalar::int(i64::from(self.weights[i])))
        })
        .expect("diagonal maps are even")
    }

    fn preserving_slots(&self) -> Vec<(usize, usize)> {
        let n = self.algebra.dim();
        (0..n)
            .flat_map(|i| (0..n).map(move |k| (i, k)))
            .filter(|&(i, k)| self.preserving(i, k))
            .collect()
    }
}

fn map_from_slots(basis: &SuperBasis, slots: &[(usize, usize)], values: &[Scalar]) -> EvenMap {
    let mut rows: BTreeMap<usize, Vector> = BTreeMap::new();
    for (&(i, k), c) in slots.iter().zip(values) {
        rows.entry(i).or_default().add_term(k, c);
    }
    EvenMap::new(basis, rows).expect("slots preserve parity")
}

/// Residual `m(x·y) − m(x)·y − x·m(y) − shift·(x·y)` flattened per output.
fn derivation_defect(
    a: &SuperAlgebra,
    t: &ProductTable,
    m: &EvenMap,
    shift: &Scalar,
) -> BTreeMap<(usize, usize, usize), Scalar> {
    let n = a.dim();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let xy = t.apply_basis(i, j);
            let r = m.apply(&xy)
                - t.apply(&m.apply_basis(i), &Vector::basis(j))
                - t.apply(&Vector::basis(i), &m.apply_basis(j))
                - xy.scale(shift);
            for (k, c) in r.iter() {
                out.insert((i, j, k), c.clone());
            }
        }
    }
    out
}

/// Seeded instance generator; the seed is kept for reports.
pub struct Generator {
    rng: ChaCha8Rng,
    seed: u64,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn coeff(&mut self) -> Scalar {
        Scalar::int(
            *[-2, -1, 1, 1, 2, 3]
                .choose(&mut self.rng)
                .expect("nonempty"),
        )
    }

    fn sparse_coeff(&mut self, density: f64) -> Scalar {
        if self.rng.gen_bool(density) {
            self.coeff()
        } else {
            Scalar::zero()
        }
    }

    /// Twist parameter for `diag(t^w)`.
    pub fn twist_parameter(&mut self) -> i64 {
        *[2, -1, 3].choose(&mut self.rng).expect("nonempty")
    }

    pub fn graded_basis(&mut self, dim: usize) -> Graded {
        let mut elems = Vec::with_capacity(dim);
        let mut weights = Vec::with_capacity(dim);
        for i in 0..dim {
            // Keep at least one even element so products have room to land.
            let odd = i > 0 && self.rng.gen_bool(0.4);
            let parity = if odd { Parity::Odd } else { Parity::Even };
            let prefix = if odd { "y" } else { "x" };
            elems.push((format!("{prefix}{i}"), parity));
            weights.push(*[0, 1, 1, 2, 2].choose(&mut self.rng).expect("nonempty"));
        }
        let basis = SuperBasis::new(elems).expect("generated names are distinct");
        Graded {
            algebra: SuperAlgebra::new(basis),
            weights,
        }
    }

    /// Weight-compatible supercommutative product, drawn until associative.
    pub fn commutative_associative(&mut self, dim: usize) -> Graded {
        let mut g = self.graded_basis(dim);
        let n = dim;
        for attempt in 0..40 {
            let density = if attempt < 20 { 0.6 } else { 0.3 };
            let mut entries: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
            for i in 0..n {
                for j in i..n {
                    let b = &g.algebra.basis;
                    let odd_square = i == j && b.parity(i).is_odd();
                    let mut v = Vector::zero();
                    if !odd_square {
                        for k in 0..n {
                            if g.allowed(i, j, k) {
                                let c = self.sparse_coeff(density);
                                v.add_term(k, &c);
                            }
                        }
                    }
                    if i != j {
                        let back = if sign_flip(b.parity(i), b.parity(j)) {
                            -&v
                        } else {
                            v.clone()
                        };
                        entries.insert((j, i), back);
                    }
                    entries.insert((i, j), v);
                }
            }
            let mul =
                ProductTable::new(&g.algebra.basis, entries).expect("weight and parity checked");
            let candidate = g
                .algebra
                .clone()
                .with_product("mul", mul)
                .with_map("alpha", EvenMap::identity(n));
            if check_hom_associative(&candidate, "mul", "alpha", true)
                .expect("names exist")
                .passed()
            {
                g.algebra = candidate;
                return g;
            }
        }
        g.algebra = g
            .algebra
            .with_product("mul", ProductTable::zero())
            .with_map("alpha", EvenMap::identity(n));
        g
    }

    /// Random element of the space of weight-preserving maps `m` with
    /// `m(x·y) = m(x)·y + x·m(y) + shift·x·y` for each listed product. The
    /// shift enters only the products flagged `true`; when any product is
    /// flagged it is an extra unknown and is returned, otherwise it is zero.
    pub fn shifted_derivation(
        &mut self,
        g: &Graded,
        conditions: &[(&str, bool)],
    ) -> (EvenMap, Scalar) {
        let a = &g.algebra;
        let slots = g.preserving_slots();
        let free_shift = conditions.iter().any(|&(_, s)| s);
        let unknowns = slots.len() + usize::from(free_shift);
        let column = |m: &EvenMap, shift: &Scalar, only_shifted: bool| {
            let mut col = BTreeMap::new();
            for (c, &(name, shifted)) in conditions.iter().enumerate() {
                if only_shifted && !shifted {
                    continue;
                }
                let t = a.product(name).expect("product exists");
                let s = if shifted {
                    shift.clone()
                } else {
                    Scalar::zero()
                };
                for ((i, j, k), v) in derivation_defect(a, t, m, &s) {
                    col.insert((c, i, j, k), v);
                }
            }
            col
        };
        let mut columns = Vec::with_capacity(unknowns);
        for u in 0..slots.len() {
            let mut vals = vec![Scalar::zero(); slots.len()];
            vals[u] = Scalar::one();
            columns.push(column(
                &map_from_slots(&a.basis, &slots, &vals),
                &Scalar::zero(),
                false,
            ));
        }
        if free_shift {
            columns.push(column(&EvenMap::zero(), &Scalar::one(), true));
        }
        let names = (0..unknowns).map(|u| format!("d{u}")).collect();
        let space = kernel_from_columns(names, &columns);
        let weights: Vec<Scalar> = (0..space.dimension())
            .map(|_| self.sparse_coeff(0.7))
            .collect();
        let point = space.point(&weights);
        let shift = if free_shift {
            point[slots.len()].clone()
        } else {
            Scalar::zero()
        };
        (
            map_from_slots(&a.basis, &slots, &point[..slots.len()]),
            shift,
        )
    }

    /// Random weight-preserving even map.
    pub fn weight_preserving_map(&mut self, g: &Graded) -> EvenMap {
        let slots = g.preserving_slots();
        let vals: Vec<Scalar> = slots.iter().map(|_| self.sparse_coeff(0.5)).collect();
        map_from_slots(&g.algebra.basis, &slots, &vals)
    }

    /// Classical Novikov product `x·D(y) + ξ·x·y` (α = id), keeping `mul`
    /// and `D`.
    pub fn novikov(&mut self, dim: usize) -> Graded {
        let g = self.commutative_associative(dim);
        self.novikov_over(g)
    }

    /// `novikov` over a given commutative associative `mul`.
    pub fn novikov_over(&mut self, mut g: Graded) -> Graded {
        let (d, _) = self.shifted_derivation(&g, &[("mul", false)]);
        let xi = self.sparse_coeff(0.6);
        let mul = g.algebra.products["mul"].clone();
        let circ = ProductTable::from_fn(&g.algebra.basis, |i, j| {
            let mut v = mul.apply(&Vector::basis(i), &d.apply_basis(j));
            v.add_scaled(&mul.apply_basis(i, j), &xi);
            v
        })
        .expect("even product");
        g.algebra = g.algebra.with_product("circ", circ).with_map("D", d);
        g
    }

    /// Poisson superalgebra with `{x,y} = E(x)D₂(y) − D₂(x)E(y)` for the
    /// Euler derivation `E` and a weight-preserving derivation `D₂`.
    pub fn poisson(&mut self, dim: usize) -> Graded {
        let mut g = self.commutative_associative(dim);
        let (d2, _) = self.shifted_derivation(&g, &[("mul", false)]);
        let e = g.euler();
        let mul = g.algebra.products["mul"].clone();
        let bracket = ProductTable::from_fn(&g.algebra.basis, |i, j| {
            mul.apply(&e.apply_basis(i), &d2.apply_basis(j))
                - mul.apply(&d2.apply_basis(i), &e.apply_basis(j))
        })
        .expect("even product");
        g.algebra = g.algebra.with_product("bracket", bracket);
        g
    }

    /// Replace every product by its `diag(t^w)` Yau twist and store the
    /// twist as `alpha`.
    pub fn twist(&mut self, mut g: Graded) -> Graded {
        let t = self.twist_parameter();
        let alpha = g.weight_twist(t);
        let basis = g.algebra.basis.clone();
        for table in g.algebra.products.values_mut() {
            let old = table.clone();
            *table = ProductTable::from_fn(&basis, |i, j| {
                old.apply(&alpha.apply_basis(i), &alpha.apply_basis(j))
            })
            .expect("even product");
        }
        g.algebra.maps.insert("alpha".into(), alpha);
        g
    }

    /// Change one structure constant of `product` (keeping parity).
    pub fn perturb_product(&mut self, a: &SuperAlgebra, product: &str) -> SuperAlgebra {
        let n = a.dim();
        let b = &a.basis;
        let candidates: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .filter(|&(i, j, k)| b.parity(i) + b.parity(j) == b.parity(k))
            .collect();
        let &(i, j, k) = candidates.choose(&mut self.rng).expect("some entry exists");
        let delta = self.coeff();
        let old = a.product(product).expect("product exists");
        let table = ProductTable::new(
            b,
            old.entries()
                .map(|(key, v)| (key, v.clone()))
                .chain(std::iter::once(((i, j), Vector::term(k, delta)))),
        )
        .expect("parity kept");
        a.clone().with_product(product, table)
    }

    /// Change one entry of the named map (keeping parity).
    pub fn perturb_map(&mut self, a: &SuperAlgebra, map: &str) -> SuperAlgebra {
        let n = a.dim();
        let b = &a.basis;
        let candidates: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |k| (i, k)))
            .filter(|&(i, k)| b.parity(i) == b.parity(k))
            .collect();
        let &(i, k) = candidates.choose(&mut self.rng).expect("some entry exists");
        let delta = self.coeff();
        let old = a.map(map).expect("map exists");
        let m = EvenMap::new(
            b,
            old.entries()
                .map(|(key, v)| (key, v.clone()))
                .chain(std::iter::once((i, Vector::term(k, delta)))),
        )
        .expect("parity kept");
        a.clone().with_map(map, m)
    }

    /// A Hom-Lie superalgebra twisted from a small graded Lie superalgebra
    /// (two-dimensional nonabelian, sl(2), Heisenberg, gl(1|1), osp(1|2))
    /// by `diag(t^w)`, with the bracket stored as `bracket`.
    pub fn graded_lie(&mut self) -> Graded {
        let pick = self.rng.gen_range(0..5);
        let g = catalog_algebra(LIE_CATALOG[pick], "bracket", true);
        let g = self.rescale(g, "bracket");
        self.twist(g)
    }

    /// Small unital or nilpotent commutative associative superalgebra of
    /// the given dimension (2 or 3) with a randomly rescaled basis.
    pub fn rich_commutative(&mut self, dim: usize) -> Graded {
        let choices: Vec<&CatalogEntry> = COMMUTATIVE_CATALOG
            .iter()
            .filter(|e| e.0.len() == dim)
            .collect();
        let entry = **choices
            .choose(&mut self.rng)
            .expect("catalog covers dimensions 2 and 3");
        let g = catalog_algebra(entry, "mul", false);
        self.rescale(g, "mul")
    }

    /// Random rescaling of the basis: same structure, varied constants.
    fn rescale(&mut self, mut g: Graded, product: &str) -> Graded {
        let scales: Vec<Scalar> = (0..g.algebra.dim()).map(|_| self.coeff()).collect();
        let t = g.algebra.products[product].clone();
        let rescaled = ProductTable::from_fn(&g.algebra.basis, |i, j| {
            let v = t.apply_basis(i, j);
            let mut out = Vector::zero();
            for (k, c) in v.iter() {
                let s = &(&scales[i] * &scales[j]) * &scales[k].inv().expect("nonzero scale");
                out.add_term(k, &(c * &s));
            }
            out
        })
        .expect("even product");
        g.algebra = g.algebra.with_product(product, rescaled);
        g
    }

    pub fn dim_between(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }
}

type CatalogEntry = (
    &'static [(&'static str, Parity)],
    &'static [i32],
    &'static [(&'static str, &'static str, &'static [(&'static str, i64)])],
);

const E: Parity = Parity::Even;
const O: Parity = Parity::Odd;

/// Two-dimensional nonabelian, sl(2), Heisenberg, gl(1|1), osp(1|2).
const LIE_CATALOG: [CatalogEntry; 5] = [
    (&[("h", E), ("x", E)], &[0, 1], &[("h", "x", &[("x", 1)])]),
    (
        &[("e", E), ("h", E), ("f", E)],
        &[1, 0, -1],
        &[
            ("h", "e", &[("e", 2)]),
            ("h", "f", &[("f", -2)]),
            ("e", "f", &[("h", 1)]),
        ],
    ),
    (
        &[("p", O), ("q", O), ("z", E)],
        &[1, 1, 2],
        &[("p", "q", &[("z", 1)])],
    ),
    (
        &[("n", E), ("c", E), ("u", O), ("v", O)],
        &[0, 0, 1, -1],
        &[
            ("n", "u", &[("u", 1)]),
            ("n", "v", &[("v", -1)]),
            ("u", "v", &[("c", 1)]),
        ],
    ),
    (
        &[("e", E), ("h", E), ("f", E), ("p", O), ("q", O)],
        &[2, 0, -2, 1, -1],
        &[
            ("h", "e", &[("e", 2)]),
            ("h", "f", &[("f", -2)]),
            ("e", "f", &[("h", 1)]),
            ("h", "p", &[("p", 1)]),
            ("h", "q", &[("q", -1)]),
            ("e", "q", &[("p", -1)]),
            ("f", "p", &[("q", -1)]),
            ("p", "p", &[("e", 2)]),
            ("q", "q", &[("f", -2)]),
            ("p", "q", &[("h", 1)]),
        ],
    ),
];

/// Upper-triangular halves of supercommutative associative products.
const COMMUTATIVE_CATALOG: [CatalogEntry; 6] = [
    (
        &[("u", E), ("t", O)],
        &[0, 1],
        &[("u", "u", &[("u", 1)]), ("u", "t", &[("t", 1)])],
    ),
    (&[("x", E), ("z", E)], &[1, 2], &[("x", "x", &[("z", 1)])]),
    (
        &[("u", E), ("x", E)],
        &[0, 1],
        &[("u", "u", &[("u", 1)]), ("u", "x", &[("x", 1)])],
    ),
    (
        &[("u", E), ("x", E), ("z", E)],
        &[0, 1, 2],
        &[
            ("u", "u", &[("u", 1)]),
            ("u", "x", &[("x", 1)]),
            ("u", "z", &[("z", 1)]),
            ("x", "x", &[("z", 1)]),
        ],
    ),
    (
        &[("x", E), ("t", O), ("z", E)],
        &[1, 1, 2],
        &[("x", "x", &[("z", 1)])],
    ),
    (
        &[("u", E), ("x", E), ("t", O)],
        &[0, 1, 1],
        &[
            ("u", "u", &[("u", 1)]),
            ("u", "x", &[("x", 1)]),
            ("u", "t", &[("t", 1)]),
        ],
    ),
];

/// Completes the listed entries by super skew-symmetry (`skew`) or super
/// commutativity and stores the result under `product` with `α = id`.
fn catalog_algebra(entry: CatalogEntry, product: &str, skew: bool) -> Graded {
    let (elems, weights, entries) = entry;
    let basis = SuperBasis::new(elems.iter().copied()).expect("static basis");
    let a = SuperAlgebra::new(basis);
    let mut full: Vec<NamedEntry2<'_>> = Vec::new();
    for &(l, r, v) in entries {
        let v: Vec<(&str, Scalar)> = v.iter().map(|&(k, c)| (k, Scalar::int(c))).collect();
        full.push((l, r, v.clone()));
        let (il, ir) = (
            a.basis.index_of(l).expect("static"),
            a.basis.index_of(r).expect("static"),
        );
        let negate = skew != sign_flip(a.basis.parity(il), a.basis.parity(ir));
        if l != r {
            let back = v
                .into_iter()
                .map(|(k, c)| (k, if negate { -c } else { c }))
                .collect();
            full.push((r, l, back));
        }
    }
    let table = a.table(&full).expect("static table");
    Graded {
        algebra: a
            .with_product(product, table)
            .with_map("alpha", EvenMap::identity(weights.len())),
        weights: weights.to_vec(),
    }
}

impl Generator {
    /// A twisted Gel'fand-Dorfman structure from the derivation
    /// construction on a random commutative associative algebra.
    pub fn gd_structure(&mut self, dim: usize) -> GDStructure {
        let g = self.rich_commutative(dim);
        let g = self.novikov_over(g);
        let g = self.twist(g);
        let shift = self.sparse_coeff(0.5);
        derivation_construction(&g.algebra, "mul", "alpha", "D", &shift)
            .expect("generated data meets the preconditions")
            .value
    }

    /// `gd_structure` with one structure constant of `circ`, `bracket` or
    /// `alpha` perturbed about half of the time.
    pub fn gd_candidate(&mut self, dim: usize) -> GDStructure {
        let mut g = self.gd_structure(dim);
        g.algebra.maps.retain(|name, _| name == "alpha");
        g.algebra
            .products
            .retain(|name, _| name == "circ" || name == "bracket");
        g.algebra = match self.rng.gen_range(0..6) {
            0 => self.perturb_product(&g.algebra, "circ"),
            1 => self.perturb_product(&g.algebra, "bracket"),
            2 => self.perturb_map(&g.algebra, "alpha"),
            _ => g.algebra,
        };
        g
    }
}
