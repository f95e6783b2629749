use serde::{Deserialize, Serialize};

use crate::generator::{Generator, GeneratorKind};
use crate::{BinaryOp, Error, Grid, Result};

/// Two-dimensional copula.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Copula {
    /// `xy`
    Product,
    /// `max(x + y - 1, 0)`
    Lukasiewicz,
    /// `c⁽⁻¹⁾(c(x) + c(y))`
    Archimedean { generator: Generator },
}

impl Copula {
    pub fn apply(&self, x: f64, y: f64) -> f64 {
        // exact margins; the formulas below only approximate them in floating point
        if x == 1.0 {
            return y;
        }
        if y == 1.0 {
            return x;
        }
        let v = match self {
            Copula::Product => x * y,
            Copula::Lukasiewicz => (x + y - 1.0).max(0.0),
            Copula::Archimedean { generator } => generator.pseudo_inverse(generator.eval(x) + generator.eval(y)),
        };
        v.clamp(0.0, 1.0)
    }

    /// The additive generator; product and Łukasiewicz use `-ln u` and `1 - u`.
    pub fn generator(&self) -> Generator {
        use crate::generator::Shape;
        match self {
            Copula::Product => Generator {
                kind: GeneratorKind::CopulaAdditive,
                shape: Shape::NegLog,
            },
            Copula::Lukasiewicz => Generator {
                kind: GeneratorKind::CopulaAdditive,
                shape: Shape::OneMinus,
            },
            Copula::Archimedean { generator } => *generator,
        }
    }

    /// Boundary conditions and 2-increasingness on the 101-point grid.
    pub fn validate(&self) -> Result<()> {
        if let Copula::Archimedean { generator } = self {
            if generator.kind != GeneratorKind::CopulaAdditive {
                return Err(Error::InvalidOperator(
                    "archimedean copula needs a copula-additive generator".into(),
                ));
            }
            generator.validate()?;
        }
        let grid = Grid::default();
        let g = grid.points();
        for &x in g {
            let margins = [
                self.apply(x, 0.0),
                self.apply(0.0, x),
                self.apply(x, 1.0) - x,
                self.apply(1.0, x) - x,
            ];
            if margins.iter().any(|m| m.abs() > 1e-9) {
                return Err(Error::InvalidOperator(format!("copula margins fail at {x}")));
            }
        }
        for i in 1..g.len() {
            for j in 1..g.len() {
                let vol = self.apply(g[i], g[j]) - self.apply(g[i], g[j - 1]) - self.apply(g[i - 1], g[j])
                    + self.apply(g[i - 1], g[j - 1]);
                if vol < -1e-9 {
                    return Err(Error::InvalidOperator(format!(
                        "copula is not 2-increasing on [{}, {}] x [{}, {}]",
                        g[i - 1],
                        g[i],
                        g[j - 1],
                        g[j]
                    )));
                }
            }
        }
        Ok(())
    }
}

impl BinaryOp for Copula {
    fn apply(&self, x: f64, y: f64) -> f64 {
        Copula::apply(self, x, y)
    }
}
