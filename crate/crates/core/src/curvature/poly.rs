/// Dense polynomial in s with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Poly(pub Vec<f64>);

impl Poly {
    pub fn eval(&self, s: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    pub fn derivative(&self) -> Poly {
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    /// `(p, p′, p″)` at s.
    pub fn jet2(&self, s: f64) -> (f64, f64, f64) {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        (self.eval(s), d1.eval(s), d2.eval(s))
    }
}
