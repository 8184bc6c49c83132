// Short tour: verify a few known solutions, look at their Jones-Wenzl data,
// find TL vectors for spin 1 and check the Yang-Baxter equation.

#include <cstdio>

#include "tlrep/tlrep.hpp"

using namespace tlrep;

namespace {

void show(const CatalogEntry& e) {
    const TLVerdict v = check_axioms(e.t, e.n);
    std::printf("%-22s n=%zu rank=%zu  Q=%.12g  %s\n", e.id.c_str(), e.n, v.rank, v.q_value, v.pass ? "ok" : "FAILS");
}

}  // namespace

int main() {
    std::printf("-- known solutions\n");
    show(xxz(2.0, complex(0.0, 1.0)));
    show(rank2_n2(1.0));
    show(cg_entry({2, 0, 0}, 1.0));
    show(build_entry("pair-s1j21", {{"q", "1.5"}}));
    show(tower_entry(rank2_n2(1.0), 3));

    std::printf("\n-- allowed Q for n = 3, r = 3\n");
    const JWReport rep = jw_report(3, 3, std::nullopt, 8);
    for (double q : rep.allowed.values) std::printf("  %.12g\n", q);
    std::printf("  d_N:");
    for (double d : rep.d) std::printf(" %g", d);
    std::printf("\n");

    std::printf("\n-- spin 1 at q = 1\n");
    for (const TLScanHit& h : scan_vectors(2, QContext(1.0)))
        std::printf("  vector |%d,%d>  Q=%g\n", h.labels[0].j2 / 2, h.labels[0].m2 / 2, h.q_values[0]);
    for (const TLScanHit& h : scan_pairs(2, QContext(1.0))) {
        std::printf("  pair |%d,%d> |%d,%d>  Q=%g\n", h.labels[0].j2 / 2, h.labels[0].m2 / 2, h.labels[1].j2 / 2,
                    h.labels[1].m2 / 2, h.q_values[0]);
    }

    std::printf("\n-- Yang-Baxter residuals on the default grid\n");
    for (const CatalogEntry& e : {xxz(3.0, 1.0), xxz(1.0, 1.0), rank2_n2(1.0)}) {
        const RFamily f = make_family(e.t, e.n);
        std::printf("  %-10s %-14s %.3g\n", e.id.c_str(), f.additive ? "additive" : "multiplicative",
                    ybe_residual(f).max_residual);
    }
    return 0;
}
