//! Command-line front end. All subcommands are deterministic:
//! identical invocations produce byte-identical output.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use spreclone::closures::{
    self, preclone_generate, relclone_generate, s_diagonals_all, verify_theorem_i,
    verify_theorem_ii, DEFAULT_BUDGET,
};
use spreclone::galois::{self, membership_certificate, preserves_witness};
use spreclone::json::{
    load_monoid, load_op, load_srelation, parse_signum_literal, signum_literal,
    CertificateFile, OpFile, OpFragmentFile, RelFragmentFile, RelationFile,
};
use spreclone::lattice::{
    self, maximal_candidates, minimal_search, phi_embed, phi_inverse, psi_embed,
    symmetry_orbit, PrecloneHandle,
};
use spreclone::monoid::Monoid;
use spreclone::ops::SignedOp;
use spreclone::rel::SRelation;
use spreclone::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
struct Common {
    /// Builtin monoid name or path to a monoid JSON file.
    #[arg(long, default_value = "trivial")]
    monoid: String,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Parser, Debug)]
#[command(name = "spreclone", version, about = "signed preclones and relational clones on finite sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check whether an operation preserves a relation.
    Check {
        #[command(flatten)]
        common: Common,
        /// Path to the operation JSON file.
        #[arg(long)]
        op: String,
        /// Path to the relation JSON file.
        #[arg(long)]
        rel: String,
    },
    /// Compute the invariant closure of a relation under a set of
    /// operations.
    Gamma {
        #[command(flatten)]
        common: Common,
        /// Operation JSON files (repeatable).
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        rel: String,
    },
    /// Emit the generic-argument relation for a signum.
    Chi {
        #[command(flatten)]
        common: Common,
        /// Domain size.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Comma-separated signum literal, e.g. `+,-`.
        #[arg(long)]
        signum: String,
    },
    /// Decide membership of an operation in a generated preclone.
    Member {
        #[command(flatten)]
        common: Common,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long)]
        op: String,
    },
    /// Bounded polymorphisms of a relation set.
    Spol {
        #[command(flatten)]
        common: Common,
        #[arg(long = "rel")]
        rels: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        op_cap: usize,
    },
    /// Bounded invariant relations of an operation set.
    Sinv {
        #[command(flatten)]
        common: Common,
        #[arg(long = "op")]
        ops: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        rel_cap: usize,
    },
    /// Generate the bounded preclone fragment of an operation set.
    GenPreclone {
        #[command(flatten)]
        common: Common,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
        #[arg(long, default_value_t = closures::DEFAULT_OP_SLACK)]
        slack: usize,
    },
    /// Generate the bounded relational-clone fragment of a relation
    /// set.
    GenRelclone {
        #[command(flatten)]
        common: Common,
        #[arg(long = "rel")]
        rels: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
        #[arg(long)]
        slack: Option<usize>,
    },
    /// List all signed diagonal relations of an arity.
    Diagonals {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        arity: usize,
    },
    /// Desk-check the first structure theorem on seeded generator
    /// sets: term reachability against closure membership.
    VerifyThm1 {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
        #[arg(long, default_value_t = 2)]
        slack: usize,
        #[arg(long, default_value_t = 1)]
        instances: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Desk-check the second structure theorem: relational fragment
    /// against the double-Galois closure.
    VerifyThm2 {
        #[command(flatten)]
        common: Common,
        #[arg(long = "rel")]
        rels: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        rel_cap: usize,
        #[arg(long, default_value_t = 2)]
        op_cap: usize,
    },
    /// Check that the Sheffer pair generates everything up to the
    /// cap.
    Sheffer {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
    },
    /// Search for candidate atoms of the preclone lattice.
    Minimal {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        cap: usize,
    },
    /// Report maximal-preclone candidates over the two-element
    /// domain.
    Maximal {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        op_cap: usize,
    },
    /// Embed a classical clone into the signed lattice.
    Embed {
        #[command(flatten)]
        common: Common,
        /// Which embedding: psi or phi.
        #[arg(value_parser = ["psi", "phi"])]
        which: String,
        /// Unsigned generator files (op JSON; signum field ignored).
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
    },
    /// Apply base permutations and monoid automorphisms to a
    /// generated preclone.
    Orbit {
        #[command(flatten)]
        common: Common,
        #[arg(long = "gen")]
        gens: Vec<String>,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        cap: usize,
        /// Base permutations as comma-separated images, e.g. `1,0`
        /// (repeatable; default: identity).
        #[arg(long = "pi")]
        pis: Vec<String>,
    },
    /// Apply a base permutation to an operation or relation file.
    Dual {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        op: Option<String>,
        #[arg(long)]
        rel: Option<String>,
        /// Base permutation as comma-separated images.
        #[arg(long)]
        pi: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() {
    if let Ok(n) = std::env::var("SPRECLONE_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn parse_perm(literal: &str, k: usize) -> Result<Vec<u8>> {
    let perm: Vec<u8> = literal
        .split(',')
        .map(|p| p.trim().parse::<u8>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Malformed(format!("bad permutation {literal:?}")))?;
    let mut seen = vec![false; k];
    if perm.len() != k || perm.iter().any(|&v| v as usize >= k) {
        return Err(Error::Malformed(format!("permutation must cover 0..{k}")));
    }
    for &v in &perm {
        if std::mem::replace(&mut seen[v as usize], true) {
            return Err(Error::Malformed(format!("bad permutation {literal:?}")));
        }
    }
    Ok(perm)
}

fn load_ops(paths: &[String], monoid: &Monoid) -> Result<Vec<SignedOp>> {
    paths.iter().map(|p| load_op(p, monoid)).collect()
}

fn load_rels(paths: &[String], monoid: &Monoid) -> Result<Vec<SRelation>> {
    paths.iter().map(|p| load_srelation(p, monoid)).collect()
}

fn print_value(format: Format, value: &serde_json::Value, text: &str) {
    match format {
        Format::Json => println!("{value}"),
        Format::Text => println!("{text}"),
    }
}

fn rel_json(rho: &SRelation, monoid: &Monoid) -> serde_json::Value {
    serde_json::to_value(RelationFile::from_srelation(rho, monoid)).unwrap()
}

fn op_json(f: &SignedOp, monoid: &Monoid) -> serde_json::Value {
    serde_json::to_value(OpFile::from_op(f, monoid)).unwrap()
}

fn op_text(f: &SignedOp, monoid: &Monoid) -> String {
    let values: Vec<String> = f.values().iter().map(|v| v.to_string()).collect();
    format!(
        "arity {} signum {} values {}",
        f.arity(),
        signum_literal(f.signum(), monoid),
        values.join("")
    )
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Check { common, op, rel } => {
            let monoid = load_monoid(&common.monoid)?;
            let f = load_op(&op, &monoid)?;
            let rho = load_srelation(&rel, &monoid)?;
            match preserves_witness(&f, &rho, &monoid) {
                None => {
                    print_value(common.format, &json!({"preserved": true}), "preserved");
                    Ok(ExitCode::SUCCESS)
                }
                Some(w) => {
                    let cert = CertificateFile::from_witness(&w, &monoid);
                    print_value(
                        common.format,
                        &json!({"preserved": false, "certificate": cert}),
                        &format!(
                            "not preserved: violated at {} with image {:?}",
                            cert.violated_s, cert.image
                        ),
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Gamma { common, gens, rel } => {
            let monoid = load_monoid(&common.monoid)?;
            let gens = load_ops(&gens, &monoid)?;
            let rho = load_srelation(&rel, &monoid)?;
            let report = galois::gamma_closure(&gens, &rho, &monoid);
            let file = RelationFile::from_srelation(&report.result, &monoid);
            print_value(
                common.format,
                &json!({"iterations": report.iterations, "closure": file}),
                &serde_json::to_string(&file).unwrap(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Chi { common, k, signum } => {
            let monoid = load_monoid(&common.monoid)?;
            let lambda = parse_signum_literal(&signum, &monoid)?;
            let chi = galois::chi(k, &lambda, &monoid)?;
            let file = RelationFile::from_srelation(&chi.rel, &monoid);
            print_value(
                common.format,
                &json!({"relation": file, "columns": chi.columns}),
                &serde_json::to_string(&file).unwrap(),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Member { common, gens, op } => {
            let monoid = load_monoid(&common.monoid)?;
            let gens = load_ops(&gens, &monoid)?;
            let g = load_op(&op, &monoid)?;
            match membership_certificate(&g, &gens, &monoid)? {
                None => {
                    print_value(common.format, &json!({"member": true}), "member");
                    Ok(ExitCode::SUCCESS)
                }
                Some(w) => {
                    let cert = CertificateFile::from_witness(&w, &monoid);
                    print_value(
                        common.format,
                        &json!({"member": false, "certificate": cert}),
                        &format!(
                            "not a member: image {:?} escapes the closure at {}",
                            cert.image, cert.violated_s
                        ),
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Spol { common, rels, k, op_cap } => {
            let monoid = load_monoid(&common.monoid)?;
            let q = load_rels(&rels, &monoid)?;
            let polys = galois::spol(&q, op_cap, k, &monoid)?;
            let files: Vec<OpFile> =
                polys.iter().map(|f| OpFile::from_op(f, &monoid)).collect();
            let lines: Vec<String> =
                polys.iter().map(|f| op_text(f, &monoid)).collect();
            print_value(
                common.format,
                &json!({"count": polys.len(), "ops": files}),
                &lines.join("\n"),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Sinv { common, ops, k, rel_cap } => {
            let monoid = load_monoid(&common.monoid)?;
            let f_set = load_ops(&ops, &monoid)?;
            let rels = galois::sinv(&f_set, rel_cap, k, &monoid)?;
            let files: Vec<RelationFile> =
                rels.iter().map(|r| RelationFile::from_srelation(r, &monoid)).collect();
            let lines: Vec<String> =
                files.iter().map(|f| serde_json::to_string(f).unwrap()).collect();
            print_value(
                common.format,
                &json!({"count": rels.len(), "relations": files}),
                &lines.join("\n"),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::GenPreclone { common, gens, k, cap, slack } => {
            let monoid = load_monoid(&common.monoid)?;
            let gens = load_ops(&gens, &monoid)?;
            let fragment =
                preclone_generate(&gens, k, &monoid, cap, slack, DEFAULT_BUDGET)?;
            let dump = OpFragmentFile::from_fragment(&fragment, &monoid);
            print_value(
                common.format,
                &serde_json::to_value(&dump).unwrap(),
                &format!(
                    "{} members; saturated per arity: {:?}",
                    fragment.members.len(),
                    fragment.saturated
                ),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::GenRelclone { common, rels, k, cap, slack } => {
            let monoid = load_monoid(&common.monoid)?;
            let q = load_rels(&rels, &monoid)?;
            let slack = slack.unwrap_or_else(|| closures::default_rel_slack(cap));
            let fragment = relclone_generate(&q, k, &monoid, cap, slack, DEFAULT_BUDGET)?;
            let dump = RelFragmentFile::from_fragment(&fragment, &monoid);
            print_value(
                common.format,
                &serde_json::to_value(&dump).unwrap(),
                &format!(
                    "{} members; saturated per arity: {:?}",
                    fragment.members.len(),
                    fragment.saturated
                ),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Diagonals { common, k, arity } => {
            let monoid = load_monoid(&common.monoid)?;
            let all = s_diagonals_all(arity, k, &monoid)?;
            let files: Vec<RelationFile> =
                all.iter().map(|r| RelationFile::from_srelation(r, &monoid)).collect();
            let lines: Vec<String> =
                files.iter().map(|f| serde_json::to_string(f).unwrap()).collect();
            print_value(
                common.format,
                &json!({"count": all.len(), "relations": files}),
                &lines.join("\n"),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyThm1 { common, k, cap, slack, instances, seed } => {
            let monoid = load_monoid(&common.monoid)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut all_ok = true;
            let mut reports = Vec::new();
            for instance in 0..instances {
                let gens = random_gens(&mut rng, k, &monoid, 3, 2)?;
                let report =
                    verify_theorem_i(&gens, k, &monoid, cap, slack, DEFAULT_BUDGET)?;
                all_ok &= report.ok();
                reports.push(json!({
                    "instance": instance,
                    "generators": gens
                        .iter()
                        .map(|f| op_json(f, &monoid))
                        .collect::<Vec<_>>(),
                    "checked": report.checked,
                    "unsound": report.unsound.len(),
                    "incomplete": report.incomplete.len(),
                    "saturated": report.saturated,
                }));
            }
            print_value(
                common.format,
                &json!({"ok": all_ok, "instances": reports}),
                &format!("{}: {} instances", if all_ok { "ok" } else { "FAILED" }, instances),
            );
            Ok(if all_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::VerifyThm2 { common, rels, k, rel_cap, op_cap } => {
            let monoid = load_monoid(&common.monoid)?;
            let q = load_rels(&rels, &monoid)?;
            let report =
                verify_theorem_ii(&q, k, &monoid, rel_cap, closures::default_rel_slack(rel_cap), op_cap)?;
            let ok = report.exact();
            print_value(
                common.format,
                &json!({
                    "ok": ok,
                    "generated": report.generated.len(),
                    "invariant": report.invariant.len(),
                    "missing": report.missing.len(),
                    "extra": report.extra.len(),
                }),
                &format!(
                    "{}: generated {} invariant {} missing {} extra {}",
                    if ok { "ok" } else { "FAILED" },
                    report.generated.len(),
                    report.invariant.len(),
                    report.missing.len(),
                    report.extra.len()
                ),
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Sheffer { common, k, cap } => {
            let monoid = load_monoid(&common.monoid)?;
            let report = lattice::sheffer_generation_check(k, &monoid, cap)?;
            let ok = report.ok();
            print_value(
                common.format,
                &json!({
                    "ok": ok,
                    "checked": report.checked,
                    "failures": report
                        .failures
                        .iter()
                        .map(|f| op_json(f, &monoid))
                        .collect::<Vec<_>>(),
                }),
                &format!(
                    "{}: {} checked, {} failures",
                    if ok { "ok" } else { "FAILED" },
                    report.checked,
                    report.failures.len()
                ),
            );
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Minimal { common, k, cap } => {
            let monoid = load_monoid(&common.monoid)?;
            let atoms = minimal_search(k, &monoid, cap)?;
            let gens: Vec<Vec<serde_json::Value>> = atoms
                .iter()
                .map(|h| h.gens().iter().map(|f| op_json(f, &monoid)).collect())
                .collect();
            let lines: Vec<String> = atoms
                .iter()
                .map(|h| {
                    h.gens()
                        .iter()
                        .map(|f| op_text(f, &monoid))
                        .collect::<Vec<_>>()
                        .join("; ")
                })
                .collect();
            print_value(
                common.format,
                &json!({"count": atoms.len(), "atoms": gens}),
                &lines.join("\n"),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Maximal { common, op_cap } => {
            let monoid = load_monoid(&common.monoid)?;
            let report = maximal_candidates(2, &monoid, op_cap)?;
            let candidates: Vec<serde_json::Value> = report
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "relation": rel_json(&c.relation, &monoid),
                        "handle": c.handle_index,
                    })
                })
                .collect();
            print_value(
                common.format,
                &json!({
                    "op_cap": report.op_cap,
                    "candidates": candidates,
                    "distinct_proper": report.distinct_proper,
                    "reference_count": report.reference_count,
                    "inclusion": report.inclusion,
                }),
                &format!(
                    "{} candidates, {} distinct proper fragments at op cap {} (reference count {})",
                    report.candidates.len(),
                    report.distinct_proper,
                    report.op_cap,
                    report.reference_count
                ),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed { common, which, gens, k, cap } => {
            let monoid = load_monoid(&common.monoid)?;
            let unsigned: Vec<_> = load_ops(&gens, &monoid)?
                .into_iter()
                .map(|f| f.underlying())
                .collect();
            let handle = if which == "psi" {
                psi_embed(&unsigned, &monoid)?
            } else {
                phi_embed(&unsigned, k, &monoid, cap)?
            };
            let fragment = handle.fragment(k, cap)?;
            emit_fragment(common.format, &fragment, &monoid);
            if which == "phi" {
                let stripped = phi_inverse(&handle, k, cap)?;
                if common.format == Format::Text {
                    println!("underlying ops: {}", stripped.len());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Orbit { common, gens, k, cap, pis } => {
            let monoid = load_monoid(&common.monoid)?;
            let gens = load_ops(&gens, &monoid)?;
            let handle = PrecloneHandle::new(gens, &monoid);
            let pis = if pis.is_empty() {
                vec![(0..k as u8).collect::<Vec<u8>>()]
            } else {
                pis.iter()
                    .map(|p| parse_perm(p, k))
                    .collect::<Result<Vec<_>>>()?
            };
            let hs = monoid.automorphisms();
            let orbit = symmetry_orbit(&handle, &pis, &hs, k, cap)?;
            let gens_out: Vec<Vec<serde_json::Value>> = orbit
                .iter()
                .map(|h| h.gens().iter().map(|f| op_json(f, &monoid)).collect())
                .collect();
            print_value(
                common.format,
                &json!({"orbit_size": orbit.len(), "handles": gens_out}),
                &format!("orbit size {}", orbit.len()),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Dual { common, op, rel, pi } => {
            let monoid = load_monoid(&common.monoid)?;
            match (op, rel) {
                (Some(path), None) => {
                    let f = load_op(&path, &monoid)?;
                    let pi = parse_perm(&pi, f.k())?;
                    let dual = f.pi_dual(&pi);
                    print_value(
                        common.format,
                        &op_json(&dual, &monoid),
                        &op_text(&dual, &monoid),
                    );
                    Ok(ExitCode::SUCCESS)
                }
                (None, Some(path)) => {
                    let rho = load_srelation(&path, &monoid)?;
                    let pi = parse_perm(&pi, rho.k())?;
                    let dual = rho.pi_dual(&pi);
                    let file = RelationFile::from_srelation(&dual, &monoid);
                    print_value(
                        common.format,
                        &serde_json::to_value(&file).unwrap(),
                        &serde_json::to_string(&file).unwrap(),
                    );
                    Ok(ExitCode::SUCCESS)
                }
                _ => Err(Error::Malformed(
                    "dual needs exactly one of --op or --rel".into(),
                )),
            }
        }
    }
}

fn emit_fragment(format: Format, fragment: &BTreeSet<SignedOp>, monoid: &Monoid) {
    let files: Vec<serde_json::Value> =
        fragment.iter().map(|f| op_json(f, monoid)).collect();
    let lines: Vec<String> = fragment.iter().map(|f| op_text(f, monoid)).collect();
    print_value(
        format,
        &json!({"count": fragment.len(), "members": files}),
        &lines.join("\n"),
    );
}

fn random_gens(
    rng: &mut ChaCha8Rng,
    k: usize,
    monoid: &Monoid,
    max_count: usize,
    max_arity: usize,
) -> Result<Vec<SignedOp>> {
    let count = rng.gen_range(1..=max_count);
    let mut gens = Vec::with_capacity(count);
    for _ in 0..count {
        gens.push(random_op(rng, k, monoid, max_arity)?);
    }
    Ok(gens)
}

fn random_op(
    rng: &mut ChaCha8Rng,
    k: usize,
    monoid: &Monoid,
    max_arity: usize,
) -> Result<SignedOp> {
    let arity = rng.gen_range(1..=max_arity);
    let signum: Vec<u8> =
        (0..arity).map(|_| rng.gen_range(0..monoid.size() as u8)).collect();
    let space = k.pow(arity as u32);
    let values: Vec<u8> = (0..space).map(|_| rng.gen_range(0..k as u8)).collect();
    SignedOp::new(k, spreclone::ops::Signum(signum), values)
}
