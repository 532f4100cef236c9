#include <filesystem>

#include "doctest.h"
#include "twobundle/constructions.hpp"
#include "twobundle/examples.hpp"
#include "twobundle/io.hpp"

using namespace twobundle;

namespace {

std::string data(const std::string& name) { return std::string(TWOBUNDLE_DATA_DIR) + "/" + name; }

// Same tables, cell by cell.
bool same_tables(const TwoCategory& a, const TwoCategory& b) { return dump_two_category(a) == dump_two_category(b); }

ParseError parse_failure(const std::string& text) {
  try {
    parse_two_category(text);
  } catch (const ParseError& e) {
    return e;
  }
  FAIL("expected a parse error");
  return ParseError(0, 0, "");
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("2-categories round trip") {
    BCOptions o;
    o.b1 = 1;
    o.b0 = 1;
    o.dim_b_bound = 0;
    for (const auto& c : {cyclic_gerbe(3), two_group(2, 2, true), delooping(symmetric_group(3)), build_2B(o).cat}) {
      auto text = dump_two_category(c);
      auto back = parse_two_category(text);
      CHECK(same_tables(c, back));
      CHECK(back.name() == c.name());
      CHECK(back.has_explicit_coherence() == c.has_explicit_coherence());
      CHECK(validate_bicategory(back).ok());
    }
  }

  TEST_CASE("complexes and simplicial sets round trip") {
    for (const auto& k : {point_complex(), simplex_boundary(3), circle_complex(5)}) CHECK(parse_complex(dump_complex(k)) == k);
    auto odd = CombinatorialBase::from_simplices({5, -2, 9}, {{5, 9}, {-2}});
    auto back = parse_complex(dump_complex(odd));
    CHECK(back == odd);
    CHECK(back.labels() == std::vector<long>{5, -2, 9});

    auto x = duskin_nerve(cyclic_gerbe(2), 3).sset();
    auto y = parse_sset(dump_sset(x));
    CHECK(y.tables().faces == x.tables().faces);
    CHECK(y.tables().degeneracies == x.tables().degeneracies);
  }

  TEST_CASE("bundles round trip") {
    auto b = load_bundle(data("gerbe3_exact.bundle"));
    CHECK(validate_bundle(b).ok());
    auto inline_text = dump_bundle(b);
    auto again = parse_bundle(inline_text);
    CHECK(again.V == b.V);
    CHECK(again.E == b.E);
    CHECK(again.phi == b.phi);
    CHECK(again.base == b.base);

    auto with_refs = dump_bundle(b, "gerbe3.2cat", "tetra.cplx");
    CHECK(with_refs.find("\"gerbe3.2cat\"") != std::string::npos);
    auto ref_back = parse_bundle(with_refs, TWOBUNDLE_DATA_DIR);
    CHECK(ref_back.phi == b.phi);

    auto broken = load_bundle(data("gerbe3_broken.bundle"));
    CHECK_FALSE(validate_bundle(broken).ok());
  }

  TEST_CASE("parse errors carry positions") {
    auto truncated = parse_failure("{\n  \"name\": \"x\",\n  \"objects\": [");
    CHECK(truncated.line() == 3);
    CHECK(truncated.code() == Errc::parse_error);

    auto text = dump_two_category(cyclic_gerbe(2));
    auto pos = text.find('{');
    text.insert(pos + 1, "\n\"bogus\": 1,");
    auto unknown = parse_failure(text);
    CHECK(unknown.line() == 2);
    CHECK(std::string(unknown.what()).find("bogus") != std::string::npos);

    // a vcomp row needs three entries
    auto bad = dump_two_category(cyclic_gerbe(2));
    auto at = bad.find("\"vcomp\"");
    REQUIRE(at != std::string::npos);
    auto open = bad.find("[", bad.find("[", at) + 1);
    bad.replace(open, bad.find("]", open) - open + 1, "[0, 0]");
    auto arity = parse_failure(bad);
    CHECK(arity.line() > 0);

    CHECK_THROWS_AS(parse_complex("{\"vertices\": [0, 1], \"simplices\": [[0, 2]]}"), ParseError);
    CHECK_THROWS_AS(parse_bundle("{\"structure\": \"nowhere.2cat\", \"base\": \"point.cplx\"}", TWOBUNDLE_DATA_DIR), ParseError);
    CHECK_THROWS_AS(read_file("/nonexistent/file"), ParseError);
  }

  TEST_CASE("shipped files load") {
    std::size_t n = 0;
    for (const auto& e : std::filesystem::directory_iterator(TWOBUNDLE_DATA_DIR)) {
      auto ext = e.path().extension();
      if (ext == ".2cat") {
        CHECK(validate_bicategory(load_two_category(e.path().string())).ok());
      } else if (ext == ".cplx") {
        load_complex(e.path().string());
      } else if (ext == ".bundle") {
        load_bundle(e.path().string());
      } else {
        continue;
      }
      ++n;
    }
    CHECK(n >= 20);
  }
}
