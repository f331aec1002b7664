"""The dishonest first agent against the three-party protocol.

Bob's playbook: pass the first correlation check honestly, then keep
the genuine photon sequence and forward halves of his own singlet
pairs instead.  When the second check's positions are announced he
entanglement-swaps each one -- a Bell measurement on his two retained
photons projects the remote Alice/Charlie pair into a definite Bell
state, and announcing the matching Pauli makes the check pass every
time.  Finally he intercepts Alice's encoded sequence, Bell-measures
it against the genuine halves he kept, and reads her Paulis outright.

Result: never detected, full message recovery, no collaboration
needed.  Whether Charlie still decodes correctly depends entirely on
whether Bob publishes his true substitute-pair operations.
"""

from qss_sim import AdversarySpec, ScenarioConfig, run_original


def summarize(report, reader_key="charlie"):
    for check in report.checks:
        print(
            f"  {check.check_id:<20} {check.samples:>4} samples, "
            f"{check.mismatches} mismatches -> {check.verdict}"
        )
    print(f"  detected: {report.detected}")
    eav = report.eavesdropper_message == report.dealer_message
    print(f"  Bob read the full message: {eav}")
    rec = report.recovered[reader_key]
    if rec is None:
        print("  Charlie decoded: nothing (aborted)")
    else:
        diff = sum(r != d for r, d in zip(rec, report.dealer_message))
        print(
            f"  Charlie decoded exactly: {rec == report.dealer_message} "
            f"({diff}/{len(rec)} bits wrong)"
        )


def main():
    print("=== swap attack, Bob publishes his true operations ===")
    cfg = ScenarioConfig(
        protocol="original",
        n_pairs=128,
        master_seed=1,
        adversary=AdversarySpec(kind="bob_swap_attack"),
    )
    summarize(run_original(cfg))

    print("\n=== swap attack, Bob falsifies his published operations ===")
    cfg = ScenarioConfig(
        protocol="original",
        n_pairs=128,
        master_seed=1,
        adversary=AdversarySpec(kind="bob_swap_attack", publish_true_ops=False),
    )
    # A uniformly wrong Pauli changes the decoded symbol 3/4 of the time,
    # i.e. flips about half of the bits.
    summarize(run_original(cfg))


if __name__ == "__main__":
    main()
