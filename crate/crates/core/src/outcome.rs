use crate::exactmath::Rat;
use num_bigint::BigInt;
use serde_json::{json, Value};

pub type IntPoint = (BigInt, BigInt);

/// Exact JSON integer of any size.
pub fn json_int(v: &BigInt) -> Value {
    Value::Number(v.to_string().parse().expect("decimal integer is a JSON number"))
}

fn int_pair(p: &IntPoint) -> Value {
    Value::Array(vec![json_int(&p.0), json_int(&p.1)])
}

/// Result of an integer minimization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Infeasible,
    Optimal { point: IntPoint, value: Rat },
    Unbounded { point: IntPoint, ray: IntPoint },
}

impl SolveOutcome {
    pub fn optimal(point: IntPoint, value: Rat) -> Self {
        SolveOutcome::Optimal { point, value }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, SolveOutcome::Infeasible)
    }

    pub fn value(&self) -> Option<&Rat> {
        match self {
            SolveOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn point(&self) -> Option<&IntPoint> {
        match self {
            SolveOutcome::Optimal { point, .. } | SolveOutcome::Unbounded { point, .. } => Some(point),
            SolveOutcome::Infeasible => None,
        }
    }

    /// Keeps the better of two outcomes: unbounded beats optimal, lower value wins,
    /// equal values go to the lexicographically smaller point.
    pub fn merge(self, other: SolveOutcome) -> SolveOutcome {
        use SolveOutcome::*;
        match (self, other) {
            (u @ Unbounded { .. }, _) | (_, u @ Unbounded { .. }) => u,
            (Infeasible, o) | (o, Infeasible) => o,
            (Optimal { point: p, value: v }, Optimal { point: q, value: w }) => {
                if w < v || (w == v && q < p) {
                    Optimal { point: q, value: w }
                } else {
                    Optimal { point: p, value: v }
                }
            }
        }
    }

    /// Swaps coordinates of the point and ray.
    pub fn swapped(self) -> SolveOutcome {
        match self {
            SolveOutcome::Infeasible => SolveOutcome::Infeasible,
            SolveOutcome::Optimal { point: (x, y), value } => SolveOutcome::Optimal { point: (y, x), value },
            SolveOutcome::Unbounded { point: (x, y), ray: (a, b) } => {
                SolveOutcome::Unbounded { point: (y, x), ray: (b, a) }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SolveOutcome::Infeasible => json!({ "status": "infeasible" }),
            SolveOutcome::Optimal { point, value } => json!({
                "status": "optimal",
                "point": int_pair(point),
                "value": value.to_string(),
            }),
            SolveOutcome::Unbounded { point, ray } => json!({
                "status": "unbounded",
                "point": int_pair(point),
                "ray": int_pair(ray),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn merge_prefers_lower_value_then_lex() {
        let a = SolveOutcome::optimal((1.into(), 0.into()), rat(3, 1));
        let b = SolveOutcome::optimal((0.into(), 5.into()), rat(3, 1));
        let c = SolveOutcome::optimal((9.into(), 9.into()), rat(2, 1));
        assert_eq!(a.clone().merge(b.clone()), b);
        assert_eq!(a.merge(c.clone()), c);
        assert_eq!(SolveOutcome::Infeasible.merge(b.clone()), b);
    }

    #[test]
    fn json_points_are_exact_numbers() {
        let big: BigInt = "-123456789012345678901234567890".parse().unwrap();
        let o = SolveOutcome::optimal((big, 3.into()), rat(-54, 1));
        assert_eq!(
            o.to_json().to_string(),
            r#"{"point":[-123456789012345678901234567890,3],"status":"optimal","value":"-54"}"#
        );
        let u = SolveOutcome::Unbounded { point: (0.into(), 0.into()), ray: (1.into(), 0.into()) };
        assert_eq!(u.to_json().to_string(), r#"{"point":[0,0],"ray":[1,0],"status":"unbounded"}"#);
    }
}
