use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{QhlAlgebra, Vector};
use crate::exact::{Exponent, Field};
use crate::sigma::Derivation;
use crate::witt::{WittAlgebra, WittElement};

pub fn witt_to_vector<E: Exponent, F: Field>(x: &WittElement<E, F>) -> Vector<E, F> {
    Vector::from_terms(x.terms().map(|(e, c)| (e.clone(), c.clone())))
}

/// `A·D` as a qhl-algebra: `alpha = sigma`, `beta = delta·`, `omega = -1`.
pub struct WittQhl<F: Field, D: Derivation<F>> {
    witt: WittAlgebra<F, D>,
    beta_scale: F,
}

impl<F: Field, D: Derivation<F>> WittQhl<F, D> {
    pub fn new(witt: WittAlgebra<F, D>) -> Self {
        WittQhl { witt, beta_scale: F::one() }
    }

    /// Multiplies `beta` by a constant (used to build a deliberately broken instance).
    pub fn with_beta_scale(mut self, c: F) -> Self {
        self.beta_scale = c;
        self
    }

    pub fn witt(&self) -> &WittAlgebra<F, D> {
        &self.witt
    }
}

impl<F: Field, D: Derivation<F>> QhlAlgebra<F> for WittQhl<F, D> {
    type Key = D::Exp;

    fn bracket(&self, x: &D::Exp, y: &D::Exp) -> Vector<D::Exp, F> {
        witt_to_vector(&self.witt.bracket_generators(x, y))
    }

    fn alpha(&self, x: &D::Exp) -> Vector<D::Exp, F> {
        witt_to_vector(&self.witt.alpha(&self.witt.generator(x)))
    }

    fn beta(&self, x: &D::Exp) -> Vector<D::Exp, F> {
        let g = self.witt.generator(x);
        let scaled = self.witt.delta_scale(&g).unwrap_or(g);
        witt_to_vector(&scaled).scale(&self.beta_scale)
    }
}

/// An algebra with one structure constant changed: `<left, right> += amount·target`.
pub struct Mutated<F: Field, A: QhlAlgebra<F>> {
    inner: A,
    left: A::Key,
    right: A::Key,
    target: A::Key,
    amount: F,
}

impl<F: Field, A: QhlAlgebra<F>> Mutated<F, A> {
    pub fn new(inner: A, left: A::Key, right: A::Key, target: A::Key, amount: F) -> Self {
        Mutated { inner, left, right, target, amount }
    }

    pub fn describe(&self) -> String {
        format!("<{}, {}> += ({})*{}", self.left, self.right, self.amount, self.target)
    }

    pub fn inner(&self) -> &A {
        &self.inner
    }

    /// `(left, right, target, amount)`.
    pub fn planted(&self) -> (&A::Key, &A::Key, &A::Key, &F) {
        (&self.left, &self.right, &self.target, &self.amount)
    }
}

impl<F: Field, A: QhlAlgebra<F>> QhlAlgebra<F> for Mutated<F, A> {
    type Key = A::Key;

    fn bracket(&self, x: &A::Key, y: &A::Key) -> Vector<A::Key, F> {
        let mut v = self.inner.bracket(x, y);
        if *x == self.left && *y == self.right {
            v.add_term(self.target.clone(), self.amount.clone());
        }
        v
    }

    fn alpha(&self, x: &A::Key) -> Vector<A::Key, F> {
        self.inner.alpha(x)
    }

    fn beta(&self, x: &A::Key) -> Vector<A::Key, F> {
        self.inner.beta(x)
    }

    fn omega(&self, x: &A::Key, y: &A::Key) -> Option<F> {
        self.inner.omega(x, y)
    }

    fn basis(&self) -> Option<Vec<A::Key>> {
        self.inner.basis()
    }
}

/// Adds `+1` to one pseudo-randomly chosen structure constant. The pair comes from the
/// window; the target from the basis when it is finite, otherwise from the window or
/// the support of the original bracket.
pub fn random_mutation<F: Field, A: QhlAlgebra<F>>(
    alg: A,
    window: &[A::Key],
    seed: u64,
) -> Mutated<F, A> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = window.choose(&mut rng).expect("empty window").clone();
    let right = window.choose(&mut rng).expect("empty window").clone();
    let candidates: Vec<A::Key> = match alg.basis() {
        Some(b) => b,
        None => {
            let mut c: Vec<A::Key> = alg.bracket(&left, &right).keys().cloned().collect();
            c.extend(window.iter().cloned());
            c
        }
    };
    let target = candidates.choose(&mut rng).expect("no target").clone();
    Mutated::new(alg, left, right, target, F::one())
}
