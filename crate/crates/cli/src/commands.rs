use fsing_core::gamma::KernelChain;
use fsing_core::oracle::{monomial_root_oracle, nu_linear_scan};
use fsing_core::{
    fpt_bracket, je_chain, nu, parse_ideal, parse_polynomial, test_ideal, Error, GammaSheaf, Ideal,
    Nilpotency, Polynomial, Result,
};
use serde_json::{json, Value};

use crate::{Command, Context, Outcome};

pub fn run(ctx: &Context, command: &Command, input: &str) -> Result<Outcome> {
    let ring = &ctx.ring;
    match command {
        Command::Root { level, .. } => {
            let root = parse_ideal(ring, input)?.root(*level)?;
            generators_outcome(&root)
        }
        Command::Bracket { e, .. } => {
            let power = parse_ideal(ring, input)?.bracket_power(*e)?;
            generators_outcome(&power)
        }
        Command::Testideal { m, e, .. } => {
            let f = parse_polynomial(ring, input)?;
            generators_outcome(&test_ideal(&f, *m, *e)?)
        }
        Command::Fpt { max_e, .. } => fpt(&parse_polynomial(ring, input)?, *max_e),
        Command::JeChain { max_e, .. } => je(&parse_polynomial(ring, input)?, *max_e),
        Command::Minimalize { k, n, .. } => {
            let m = sheaf(ctx, input, k.as_deref(), n.as_deref())?;
            minimalize(ctx, &m)
        }
        Command::Nilpotency { k, n, max_e, .. } => {
            let m = sheaf(ctx, input, k.as_deref(), n.as_deref())?;
            nilpotency(&m, *max_e)
        }
        Command::Verify { max_e, .. } => verify(ctx, &parse_polynomial(ring, input)?, *max_e),
    }
}

fn generators(ideal: &Ideal) -> Result<Vec<String>> {
    Ok(ideal.reduced_gb()?.iter().map(|g| g.to_string()).collect())
}

fn show(gens: &[String]) -> String {
    if gens.is_empty() {
        "(0)".to_string()
    } else {
        format!("({})", gens.join("; "))
    }
}

fn generators_outcome(ideal: &Ideal) -> Result<Outcome> {
    let gens = generators(ideal)?;
    Ok(Outcome {
        text: show(&gens),
        result: json!({ "generators": gens }),
        certificate: None,
    })
}

fn fpt(f: &Polynomial, max_e: u32) -> Result<Outcome> {
    if max_e == 0 {
        return Err(Error::Domain("--max-e must be at least 1".into()));
    }
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for e in 1..=max_e {
        let b = fpt_bracket(f, e)?;
        text.push(format!("e={e} nu={} fpt in {b}", b.nu));
        rows.push(json!({
            "e": e,
            "nu": b.nu,
            "lo": b.lo.to_string(),
            "hi": b.hi.to_string(),
            "bracket": b.to_string(),
        }));
    }
    let last = rows.last().unwrap()["bracket"].clone();
    Ok(Outcome {
        text: text.join("\n"),
        result: json!({ "levels": rows, "bracket": last }),
        certificate: None,
    })
}

fn je(f: &Polynomial, max_e: u32) -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut text = vec!["e\tequal\tdirect\titerated".to_string()];
    for level in je_chain(f, max_e)? {
        let direct = generators(&level.direct)?;
        let iterated = generators(&level.iterated)?;
        text.push(format!(
            "{}\t{}\t{}\t{}",
            level.e,
            level.equal,
            show(&direct),
            show(&iterated)
        ));
        rows.push(json!({
            "e": level.e,
            "direct": direct,
            "iterated": iterated,
            "equal": level.equal,
        }));
    }
    let all_equal = rows.iter().all(|r| r["equal"] == true);
    Ok(Outcome {
        text: text.join("\n"),
        result: json!({ "levels": rows, "all_equal": all_equal }),
        certificate: None,
    })
}

/// `N/K` with multiplier `f`; `K` defaults to `(0)` and `N` to `(1)`.
fn sheaf(ctx: &Context, f: &str, k: Option<&str>, n: Option<&str>) -> Result<GammaSheaf> {
    let ring = &ctx.ring;
    let f = parse_polynomial(ring, f)?;
    let k = match k {
        Some(src) => parse_ideal(ring, src)?,
        None => Ideal::zero(ring),
    };
    let n = match n {
        Some(src) => parse_ideal(ring, src)?,
        None => Ideal::unit(ring),
    };
    GammaSheaf::new(k, n, f)
}

fn minimalize(ctx: &Context, m: &GammaSheaf) -> Result<Outcome> {
    let rep = m.minimalize(&ctx.budgets)?;
    let k = generators(rep.result.relations())?;
    let n = generators(rep.result.ambient())?;
    let c = &rep.certificate;
    Ok(Outcome {
        text: format!(
            "N = {}\nK = {}\ncertificate: structural map injective {}, Fr-fixed {}",
            show(&n),
            show(&k),
            c.structural_map_injective,
            c.fr_fixed
        ),
        result: json!({
            "N": n,
            "K": k,
            "kernel_chain_length": rep.kernel_chain_length,
            "fr_iterations": rep.fr_iterations,
            "tail_stable": rep.tail_stable,
        }),
        certificate: Some(json!({
            "structural_map_injective": c.structural_map_injective,
            "fr_fixed": c.fr_fixed,
        })),
    })
}

fn nilpotency(m: &GammaSheaf, max_e: usize) -> Result<Outcome> {
    let order = m.nilpotency_order(max_e)?;
    let (chain, stable) = match m.kernel_chain(max_e) {
        Ok(KernelChain { ideals }) => (ideals, true),
        Err(Error::Budget { partial, .. }) => (partial, false),
        Err(e) => return Err(e),
    };
    let chain = chain.iter().map(generators).collect::<Result<Vec<_>>>()?;
    let order = match order {
        Nilpotency::Order(n) => Some(n),
        Nilpotency::NotWithinBudget => None,
    };
    let mut text = vec![match order {
        Some(n) => format!("nilpotent of order {n}"),
        None => format!("not nilpotent within {max_e} steps"),
    }];
    for (i, k) in chain.iter().enumerate() {
        text.push(format!("K_{i} = {}", show(k)));
    }
    if stable {
        text.push(format!(
            "maximal nilpotent subsheaf: K_inf = {}",
            show(chain.last().unwrap())
        ));
    }
    Ok(Outcome {
        text: text.join("\n"),
        result: json!({
            "nilpotent": order.is_some(),
            "order": order,
            "kernel_chain": chain,
            "chain_stable": stable,
            "max_nilpotent_subsheaf": if stable { json!(chain.last().unwrap()) } else { Value::Null },
        }),
        certificate: None,
    })
}

struct Check {
    name: &'static str,
    e: Option<u32>,
    ok: bool,
    detail: String,
}

fn verify(ctx: &Context, f: &Polynomial, max_e: u32) -> Result<Outcome> {
    let ring = &ctx.ring;
    let mut checks = Vec::new();
    let principal = Ideal::principal(f);
    for e in 1..=max_e {
        let root = principal.root(e)?;
        checks.push(Check {
            name: "root_adjunction",
            e: Some(e),
            ok: root.bracket_power(e)?.contains(f)?,
            detail: format!("root = {}", show(&generators(&root)?)),
        });
        if f.is_monomial() && !f.is_zero() {
            let exps = f.leading_monomial().unwrap().exps();
            let want = monomial_root_oracle(ring, exps, e)?;
            let want = Ideal::principal(&Polynomial::monomial(ring, want.exps().to_vec(), 1)?);
            checks.push(Check {
                name: "monomial_floor_oracle",
                e: Some(e),
                ok: root.equals(&want)?,
                detail: format!("oracle = {want}"),
            });
        }
        if !f.is_zero() && f.constant_coeff() == 0 {
            let fast = nu(f, e)?;
            let scan = nu_linear_scan(f, e)?;
            checks.push(Check {
                name: "nu_linear_scan",
                e: Some(e),
                ok: fast == scan,
                detail: format!("nu = {fast}, scan = {scan}"),
            });
        }
    }
    for level in je_chain(f, max_e)? {
        checks.push(Check {
            name: "je_equals_me",
            e: Some(level.e),
            ok: level.equal,
            detail: String::new(),
        });
    }
    if !f.is_zero() {
        let rep = GammaSheaf::principal(f).minimalize(&ctx.budgets)?;
        let c = rep.certificate;
        checks.push(Check {
            name: "minimalize_certificate",
            e: None,
            ok: c.structural_map_injective && c.fr_fixed && rep.tail_stable,
            detail: String::new(),
        });
    }

    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.ok)
        .map(|c| match c.e {
            Some(e) => format!("{} (e={e})", c.name),
            None => c.name.to_string(),
        })
        .collect();
    if !failed.is_empty() {
        return Err(Error::Invariant(format!(
            "oracle cross-checks failed: {}",
            failed.join(", ")
        )));
    }
    let text = checks
        .iter()
        .map(|c| {
            let level = c.e.map(|e| format!(" e={e}")).unwrap_or_default();
            let detail = if c.detail.is_empty() {
                String::new()
            } else {
                format!(": {}", c.detail)
            };
            format!("ok {}{level}{detail}", c.name)
        })
        .collect::<Vec<_>>()
        .join("\n");
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| json!({ "name": c.name, "e": c.e, "ok": c.ok, "detail": c.detail }))
        .collect();
    Ok(Outcome {
        text,
        result: json!({ "checks": rows, "all_ok": true }),
        certificate: None,
    })
}
