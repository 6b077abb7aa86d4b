#include <catch_amalgamated.hpp>

#include "gpdlab/section2.hpp"
#include "oracles.hpp"

using namespace gpdlab;

namespace {

void require_all_pass(const std::vector<ClaimResult>& r) {
  for (const auto& c : r) {
    INFO(c.id << " " << (c.witness ? c.witness->dump() : ""));
    CHECK(c.status == Status::pass);
  }
}

const ClaimResult& claim(const std::vector<ClaimResult>& r, const std::string& id) {
  for (const auto& c : r)
    if (c.id == id) return c;
  throw std::runtime_error("missing " + id);
}

}  // namespace

TEST_CASE("section2 on small groups", "[section2]") {
  for (const char* spec : {"cyclic:2", "cyclic:3", "cyclic:4", "product:cyclic:2,cyclic:2", "symmetric:3",
                           "dihedral:4", "quaternion8"})
    for (std::size_t n : {2u, 3u}) {
      INFO(spec << " n=" << n);
      const auto g = make_standard_group(spec);
      const auto r = verify_section2(standard_model(g, n, false));
      require_all_pass(r);
      CHECK(claim(r, "x-is-central-translates").details["orbit size"] == center(g).order());
    }
}

TEST_CASE("section2 frozen values", "[section2]") {
  SECTION("S3: singleton orbit, trivial center") {
    const auto r = verify_section2(standard_model(symmetric(3), 3, false));
    CHECK(claim(r, "x-is-central-translates").details["orbit size"] == 1);
    CHECK(claim(r, "hom-automorphisms-are-g").details["order"] == 6);
  }
  SECTION("Q8: center of order 2") {
    const auto r = verify_section2(standard_model(quaternion8(), 2, false));
    CHECK(claim(r, "gamma2-is-center").details["order"] == 2);
  }
  SECTION("stabilizer orders |G|^(n-1)") {
    CHECK(claim(verify_section2(standard_model(cyclic(2), 3, false)), "choice-family-automorphisms")
              .details["stabilizer order"] == 4);
    CHECK(claim(verify_section2(standard_model(symmetric(3), 3, false)), "choice-family-automorphisms")
              .details["stabilizer order"] == 36);
    CHECK(claim(verify_section2(standard_model(symmetric(3), 2, false)), "choice-family-automorphisms")
              .details["stabilizer order"] == 6);
  }
  SECTION("double cover") { require_all_pass(verify_section2(standard_model(cyclic(3), 3, true))); }
}

TEST_CASE("choice families agree with the oracle", "[section2]") {
  for (const auto& g : {cyclic(2), symmetric(3)}) {
    const auto m = standard_model(g, 3, false);
    auto lib = choice_family_automorphisms(m, 0);
    auto ref = oracle::choice_family_maps(g, 3, 0);
    std::sort(ref.begin(), ref.end());
    CHECK(lib == ref);
  }
}
