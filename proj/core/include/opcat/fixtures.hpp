#pragma once

#include <json.hpp>

#include "opcat/blob.hpp"

namespace opcat {

// Text fixture format: structured JSON with names, not indices, serialized
// with a canonical key order so load/save round trips are byte-stable.
using Json = nlohmann::ordered_json;

std::string canonical_dump(const Json& j);
uint64_t fixture_hash(const Json& j);

Json save_fincat(const FinCategory& c);
FinCategory load_fincat(const Json& j);

Json save_opcat(const UnaryOpCat& o);
UnaryOpCat load_opcat(const Json& j);

Json save_monoid(const MonoidLike& m);
MonoidLike load_monoid(const Json& j);

// operads and modules reference their base category fixture by relative path
struct SetOperadFixture {
    std::string category_ref;
    UnaryOpCat category;
    SetOperad operad;
    std::optional<std::vector<int>> cat_units;
    std::optional<std::vector<std::vector<int>>> pseudo_units;
};
Json save_set_operad(const SetOperadFixture& f);
SetOperadFixture load_set_operad(const Json& j, const std::string& base_dir);

struct LinOperadFixture {
    std::string category_ref;
    UnaryOpCat category;
    LinOperad operad;
    std::optional<std::vector<RatVec>> fiberwise_units;
};
Json save_lin_operad(const LinOperadFixture& f);
LinOperadFixture load_lin_operad(const Json& j, const std::string& base_dir);

struct OpModuleFixture {
    std::string category_ref;
    UnaryOpCat category;
    OperadicLeftModule module;
};
Json save_op_module(const OpModuleFixture& f);
OpModuleFixture load_op_module(const Json& j, const std::string& base_dir);

struct PModuleFixture {
    std::string operad_ref, module_ref;
    LinOperadFixture operad;
    OpModuleFixture module;
    PModule pmod;
};
Json save_pmodule(const PModuleFixture& f);
PModuleFixture load_pmodule(const Json& j, const std::string& base_dir);

Json save_blob_model(const BlobModel& m);
BlobModel load_blob_model(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace opcat
