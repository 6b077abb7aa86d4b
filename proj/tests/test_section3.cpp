#include <catch_amalgamated.hpp>

#include "gpdlab/section3.hpp"

using namespace gpdlab;

namespace {

const ClaimResult& claim(const std::vector<ClaimResult>& r, const std::string& id) {
  for (const auto& c : r)
    if (c.id == id) return c;
  throw std::runtime_error("missing " + id);
}

void require_no_failure(const std::vector<ClaimResult>& r) {
  for (const auto& c : r) {
    INFO(c.id << " " << (c.witness ? c.witness->dump() : ""));
    CHECK(c.status != Status::fail);
  }
}

}  // namespace

TEST_CASE("section3 on the standard instances", "[section3]") {
  SECTION("plain Z/2, n=4") {
    auto r = verify_section3(standard_model(cyclic(2), 4, false));
    require_no_failure(r);
    CHECK(claim(r, "transport-independent").status == Status::pass);
    CHECK(claim(r, "noncentral-example").status == Status::skipped);
  }
  SECTION("cover Z/2, n=4") {
    auto r = verify_section3(standard_model(cyclic(2), 4, true));
    require_no_failure(r);
    const auto& ex = claim(r, "noncentral-example");
    CHECK(ex.status == Status::pass);
    CHECK(ex.details["f order"] == 4);
    CHECK(ex.details["g order"] == 2);
    CHECK(claim(r, "composite-in-y").details["composites"] == 8);
  }
  SECTION("cover Z/3, n=4") {
    auto r = verify_section3(standard_model(cyclic(3), 4, true));
    require_no_failure(r);
    CHECK(claim(r, "noncentral-example").details["f order"] == 6);
  }
  SECTION("trivial group") {
    require_no_failure(verify_section3(standard_model(cyclic(1), 4, false)));
    require_no_failure(verify_section3(standard_model(cyclic(1), 4, true)));
  }
  SECTION("non-abelian vertex groups skip transport") {
    auto r = verify_section3(standard_model(symmetric(3), 3, false));
    require_no_failure(r);
    CHECK(claim(r, "transport-independent").status == Status::skipped);
  }
}
