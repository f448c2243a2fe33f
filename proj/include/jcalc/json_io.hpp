#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jcalc/embed.hpp"
#include "jcalc/jspace.hpp"
#include "jcalc/kirby.hpp"
#include "jcalc/lens.hpp"

namespace jcalc::jsonio {

using Json = nlohmann::ordered_json;

/* Integers are emitted as JSON numbers while they fit in int64 and as
 * decimal strings beyond that; both forms parse back. */
Json int_to_json(const Int& v);
Int int_from_json(const Json& j, const std::string& path);

Json to_json(const std::vector<Int>& v);
Json to_json(const jspace::Residue& r);
Json to_json(const FinAbGroup& g);
Json to_json(const GroupElement& g);
Json to_json(const FormDescriptor& f);
Json to_json(const kirby::LinkingPresentation& P);
Json to_json(const kirby::ManifoldInvariants& inv);
Json to_json(const jspace::JClassDescriptor& d);
Json to_json(const embed::TargetSurface& X);
Json to_json(const embed::ConditionRecord& r);
Json to_json(const embed::FeasibilityReport& r);
Json to_json(const embed::ConstructionCertificate& cert);
Json to_json(const embed::CertCheckReport& rep);

/* Parsers raise Error("SchemaError", ...) naming the offending path. */
kirby::LinkingPresentation presentation_from_json(const Json& j, const std::string& path);
jspace::SurfaceData surface_from_json(const Json& j, const std::string& path);
kirby::SpinStructureRep spin_from_json(const Json& j, const std::string& path);
embed::TargetSurface target_from_json(const Json& j, const std::string& path);
FormDescriptor form_from_json(const Json& j, const std::string& path);
embed::ConstructionCertificate certificate_from_json(const Json& j, const std::string& path);

/* Batch document: named inputs plus a job list.  Version "jcalc/1". */
struct InputDocument {
    std::string version;
    std::map<std::string, kirby::LinkingPresentation> presentations;
    std::map<std::string, jspace::SurfaceData> surfaces;
    std::map<std::string, std::vector<std::uint8_t>> spins;
    std::map<std::string, embed::TargetSurface> targets;
    std::vector<std::pair<std::string, std::vector<std::string>>> jobs;
};

/* Parse + full schema validation: structure, known commands, arity, name
 * resolution (against the document and the builtins), and dimension
 * agreement across references.  Throws Error("SchemaError"). */
InputDocument parse_document(const Json& doc);

/* Builtin named inputs available to documents and the command line:
 * presentations `empty`, `e8`, `s2xs1`, `hyp`; spin `s0` and surface
 * `emptyF` resolve against the presentation they are used with. */
const std::map<std::string, kirby::LinkingPresentation>& builtin_presentations();

kirby::LinkingPresentation resolve_presentation(const InputDocument& doc, const std::string& name);
kirby::SpinStructureRep resolve_spin(const InputDocument& doc, const std::string& name, long n);
jspace::SurfaceData resolve_surface(const InputDocument& doc, const std::string& name, long n);
embed::TargetSurface resolve_target(const InputDocument& doc, const std::string& name);

/* Execute one job; domain failures propagate as Error. */
Json run_job(const InputDocument& doc, const std::string& command,
             const std::vector<std::string>& args);

struct RunOutcome {
    Json report;
    int exit_code = 0; // 0 ok, 1 domain error in some job, 2 schema error
};

/* Run every job in document order; per-job domain errors become `error`
 * entries in the report and set exit code 1. */
RunOutcome run_document(const InputDocument& doc);

/* Plain-text rendering of a report produced by run_document. */
std::string render_text(const Json& report, bool quiet);

} // namespace jcalc::jsonio
