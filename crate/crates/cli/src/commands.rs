use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use spike_lab::matrix::{basis_family, ones_plus_diagonal};
use spike_lab::repr::{
    certificate, integer_spike_matrix, prop41_integers, prop43_inverses, Admissible,
    Representable,
};
use spike_lab::spike::{axiom_report, orbit_size};
use spike_lab::*;

use crate::report::{Ctx, Done, Envelope, Failure, Status};
use crate::{Command, Construction, FieldSize};

fn diag_echo(x: &Diagonal) -> Value {
    json!({
        "text": x.to_string(),
        "p": x.p(),
        "residues": x.values(),
        "balanced": x.balanced(),
    })
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn sized(name: &str, s: &FieldSize) -> Ctx {
    Ctx::new(name).param("p", json!(s.p)).param("n", json!(s.n))
}

pub fn dispatch(cmd: &Command, env: &Envelope) -> std::result::Result<Done, Failure> {
    match cmd {
        Command::Axioms(d) => {
            let ctx = Ctx::new("axioms").param("diag", diag_echo(&d.diag));
            let rep = ctx.lib(build_rep(&d.diag))?;
            let a = rep.matrix();
            let rows: Vec<Vec<u32>> =
                (0..a.rows()).map(|r| (0..a.cols()).map(|c| a.raw(r, c)).collect()).collect();
            let report = axiom_report(a);
            let holds = report.holds();
            Ok(ctx.done(json!({ "matrix": rows, "axioms": report, "holds": holds }), holds))
        }
        Command::Signature(d) => {
            let ctx = Ctx::new("signature").param("diag", diag_echo(&d.diag));
            let sig = ctx.lib(signature(&d.diag))?;
            let mut members = sig.members();
            members.sort_by(|a, b| a.lex_cmp(*b));
            let result = json!({
                "n": sig.n(),
                "hex": sig.to_hex(),
                "size": sig.len(),
                "members": members,
                "inverses": d.diag.inverses(),
                "balanced_inverses": d.diag.balanced_inverses(),
            });
            Ok(ctx.done(result, true))
        }
        Command::Normalize(d) => {
            let ctx = Ctx::new("normalize").param("diag", diag_echo(&d.diag));
            let y = ctx.lib(normalize(&d.diag))?;
            let ok = y.inverses()[0] == y.p() - 1;
            Ok(ctx.done(json!({ "normalized": diag_echo(&y), "inverses": y.balanced_inverses() }), ok))
        }
        Command::Canonical(d) => {
            let ctx = Ctx::new("canonical").param("diag", diag_echo(&d.diag));
            let c = ctx.lib(canonical_form(&d.diag))?;
            let size = ctx.lib(orbit_size(&d.diag))?;
            Ok(ctx.done(json!({ "canonical": diag_echo(&c), "orbit_size": size }), true))
        }
        Command::Enumerate(s) => {
            let ctx = sized("enumerate", s);
            let classes = ctx.lib(enumerate_spikes(s.p, s.n))?;
            let covered: u64 = classes.iter().map(|c| c.orbit_size).sum();
            let total = (s.p - 1).checked_pow(s.n as u32);
            let result = json!({
                "count": classes.len(),
                "diagonals_covered": covered,
                "classes": classes,
            });
            Ok(ctx.done(result, total == Some(covered)))
        }
        Command::Lemma21(s) | Command::Lemma22(s) => {
            let (name, run): (&str, fn(u64, usize) -> Result<LemmaReport>) =
                if matches!(cmd, Command::Lemma21(_)) {
                    ("lemma21", verify_lemma_2_1)
                } else {
                    ("lemma22", verify_lemma_2_2)
                };
            let ctx = sized(name, s);
            let report = ctx.lib(run(s.p, s.n))?;
            let ok = report.passed();
            Ok(ctx.done(to_value(&report), ok))
        }
        Command::Detcheck { size, samples } => {
            let ctx = sized("detcheck", size).param("samples", json!(samples));
            let field = ctx.lib(make_field(size.p))?;
            if size.n == 0 {
                return Err(Failure::Usage("detcheck needs n >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(env.seed);
            let mut mismatches = Vec::new();
            for _ in 0..*samples {
                let x: Vec<FieldElem> =
                    (0..size.n).map(|_| field.elem(rng.gen_range(1..field.get()) as i64)).collect();
                let fast = ctx.lib(spike_det(&x))?;
                let gauss = ctx.lib(ones_plus_diagonal(&x).det())?;
                if fast != gauss {
                    let xs: Vec<u32> = x.iter().map(|e| e.value()).collect();
                    mismatches.push(json!({ "x": xs, "closed_form": fast.value(), "gaussian": gauss.value() }));
                }
            }
            let ok = mismatches.is_empty();
            Ok(ctx.done(json!({ "checked": samples, "mismatches": mismatches }), ok))
        }
        Command::Unique(s) => {
            let ctx = sized("unique", s);
            let report = ctx.lib(uniqueness_audit(s.p, s.n))?;
            let ok = report.collisions == 0;
            Ok(ctx.done(to_value(&report), ok))
        }
        Command::Transfer { diag, q } => {
            let ctx = Ctx::new("transfer").param("diag", diag_echo(&diag.diag)).param("q", json!(q));
            let sig = ctx.lib(signature(&diag.diag))?;
            let out = ctx.lib(find_rep_over(&sig, *q, env.node_budget))?;
            let result = json!({
                "signature": sig.to_hex(),
                "representable": out.witness.is_some(),
                "witness": out.witness.as_ref().map(diag_echo),
                "nodes_visited": out.nodes,
            });
            Ok(ctx.done(result, true))
        }
        Command::Charset { diag, primes } => {
            let ctx = Ctx::new("charset")
                .param("diag", diag_echo(&diag.diag))
                .param("primes", json!(primes));
            let report = ctx.lib(characteristic_set(&diag.diag, primes, env.node_budget))?;
            let status = if report.verdicts.iter().any(|v| v.representable == Representable::Unknown) {
                Status::BudgetExhausted
            } else if report.agreement {
                Status::Ok
            } else {
                Status::Failed
            };
            Ok(ctx.done_with(to_value(&report), status))
        }
        Command::Construct { which, p } => construct(*which, *p),
        Command::Lbound { p, primes, n_max } => {
            let ctx = Ctx::new("lbound")
                .param("p", json!(p))
                .param("primes", json!(primes))
                .param("n_max", json!(n_max));
            let report = ctx.lib(estimate_l(*p, primes, *n_max, env.node_budget))?;
            let ok = report.in_interval != Some(false);
            Ok(ctx.done(to_value(&report), ok))
        }
    }
}

fn construct(which: Construction, p: u64) -> std::result::Result<Done, Failure> {
    match which {
        Construction::Prop41 => {
            let ctx = Ctx::new("construct").param("which", json!("prop41")).param("p", json!(p));
            let xs = ctx.lib(prop41_integers(p))?;
            let x = ctx.lib(construct_prop41(p))?;
            let rows = integer_spike_matrix(&xs);
            let moduli: Vec<u64> = (p..).filter(|&q| make_field(q).is_ok()).take(3).collect();
            let mut axioms = true;
            let mut families = Vec::new();
            for &q in &moduli {
                let a = MatrixGF::from_rows(ctx.lib(make_field(q))?, &rows);
                axioms &= check_axioms(&a);
                // Basis families are only enumerated for small matrices.
                if let Ok(f) = basis_family(&a) {
                    families.push(f);
                }
            }
            let compared = families.len() == moduli.len();
            let agree = compared && families.windows(2).all(|w| w[0].members == w[1].members);
            let result = json!({
                "integers": xs,
                "diagonal": diag_echo(&x),
                "n": x.n(),
                "integer_matrix": rows,
                "moduli": moduli,
                "axioms": axioms,
                "basis_count": families.first().map(|f| f.len()),
                "bases_agree": compared.then_some(agree),
            });
            Ok(ctx.done(result, axioms && (!compared || agree)))
        }
        Construction::Prop43 => {
            let ctx = Ctx::new("construct").param("which", json!("prop43")).param("p", json!(p));
            let inv = ctx.lib(prop43_inverses(p))?;
            let x = ctx.lib(construct_prop43(p))?;
            let sig = ctx.lib(signature(&x))?;
            let facts = ctx.lib(propagate_facts(&sig, p))?;
            let cert = certificate(&sig, &facts);
            let ok = cert
                .as_ref()
                .is_some_and(|c| c.admissible == Admissible::Finite { primes: vec![p] });
            let result = json!({
                "inverses": inv,
                "diagonal": diag_echo(&x),
                "n": x.n(),
                "signature": sig.to_hex(),
                "certificate": cert,
            });
            Ok(ctx.done(result, ok))
        }
    }
}
