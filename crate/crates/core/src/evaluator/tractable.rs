use num_bigint::BigUint;
use num_traits::Pow;
use serde::{Serialize, Serializer};

use crate::abelian::count_homs;
use crate::dichotomy::{classify, Classification, TractableStructure};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::model::{degrees, instance_components, to_csp, Instance, SymFunc};

use super::brute::{check_arity, eval_bruteforce};
use super::lambda::{lambda_factor_direct, lambda_monomial_dp};

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Brute,
    Structured,
    StructuredDp,
}

/// `Λ_l` and the homomorphism count of one domain component on one instance component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermReport {
    pub domain_component: usize,
    pub lambda: Rational,
    #[serde(serialize_with = "as_decimal")]
    pub homs: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: usize,
    pub scopes: usize,
    pub value: Rational,
    pub terms: Vec<TermReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvalReport {
    pub value: Rational,
    pub method: Method,
    /// Variables in no scope (after contracting equalities).
    pub isolated: usize,
    pub components: Vec<ComponentReport>,
}

fn as_decimal<S: Serializer>(x: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&x.to_string())
}

/// `Z = Π over instance components of Σ_l Λ_l · #homs_l`, times `q` per
/// isolated variable. With [`Method::StructuredDp`] every `Λ_l` comes from the
/// monomial program and is cross-checked against the closed form.
pub fn eval_tractable<I: Instance + ?Sized>(ts: &TractableStructure, inst: &I, method: Method) -> Result<EvalReport> {
    if method == Method::Brute {
        return Err(Error::InvalidArgument("eval_tractable runs a structured method".into()));
    }
    if let Some(s) = inst.scopes().iter().find(|s| s.len() != ts.r) {
        return Err(Error::InvalidArgument(format!("scope {s:?} does not have arity {}", ts.r)));
    }
    let csp = to_csp(inst).contract_equalities();
    let split = instance_components(&csp);
    let q = BigUint::from(ts.q);
    if ts.components.is_empty() {
        let value = if csp.scopes().is_empty() {
            Rational::from(Pow::pow(&q, csp.n()))
        } else {
            Rational::zero()
        };
        return Ok(EvalReport {
            value,
            method,
            isolated: split.isolated.len(),
            components: Vec::new(),
        });
    }
    let mut value = Rational::from(Pow::pow(&q, split.isolated.len()));
    let mut components = Vec::with_capacity(split.parts.len());
    for part in &split.parts {
        let inst = &part.instance;
        let deg = degrees(inst);
        let m = inst.scopes().len();
        let mut terms = Vec::with_capacity(ts.components.len());
        let mut sum = Rational::zero();
        for (l, comp) in ts.components.iter().enumerate() {
            let direct = lambda_factor_direct(&comp.factor, &deg, m)?;
            let lambda = if method == Method::StructuredDp {
                let (_, dp) = lambda_monomial_dp(&comp.factor, inst)?;
                if dp != direct {
                    return Err(Error::Internal(format!(
                        "monomial program gives {dp}, closed form {direct} (component {l})"
                    )));
                }
                dp
            } else {
                direct
            };
            let homs = count_homs(&comp.group.decomposition, comp.group.a, inst);
            sum += &lambda * Rational::from(homs.clone());
            terms.push(TermReport {
                domain_component: l,
                lambda,
                homs,
            });
        }
        value *= &sum;
        components.push(ComponentReport {
            vertices: part.vertices.len(),
            scopes: m,
            value: sum,
            terms,
        });
    }
    Ok(EvalReport {
        value,
        method,
        isolated: split.isolated.len(),
        components,
    })
}

/// Evaluation strategy for [`evaluate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Structured when `g` is tractable, otherwise brute force.
    Auto,
    Structured,
    DpLambda,
    Brute,
}

/// Classifies when needed and evaluates with the requested strategy.
pub fn evaluate<I: Instance + ?Sized>(g: &SymFunc, inst: &I, strategy: Strategy, cap: u64) -> Result<EvalReport> {
    check_arity(g, inst)?;
    let brute = |inst: &I| -> Result<EvalReport> {
        let value = eval_bruteforce(g, inst, cap)?;
        let isolated = instance_components(&to_csp(inst).contract_equalities()).isolated.len();
        Ok(EvalReport {
            value,
            method: Method::Brute,
            isolated,
            components: Vec::new(),
        })
    };
    if strategy == Strategy::Brute {
        return brute(inst);
    }
    match classify(g)? {
        Classification::Tractable(ts) => {
            let method = if strategy == Strategy::DpLambda {
                Method::StructuredDp
            } else {
                Method::Structured
            };
            eval_tractable(&ts, inst, method)
        }
        Classification::Hard(w) if strategy == Strategy::Auto => {
            let _ = w;
            brute(inst)
        }
        Classification::Hard(w) => Err(Error::Precondition(format!(
            "structured evaluation needs a tractable function; {w}"
        ))),
    }
}
