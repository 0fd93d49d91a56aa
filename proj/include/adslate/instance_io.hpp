#ifndef ADSLATE_INSTANCE_IO_HPP_
#define ADSLATE_INSTANCE_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "adslate/colgen.hpp"
#include "adslate/model.hpp"

namespace adslate {

// Malformed document. The message carries "source:line:column" for
// syntax errors and "source: /json/pointer" for field errors.
class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

using Document = std::variant<QueryInstance, ColGenProblem>;

Document LoadDocument(const std::filesystem::path& path);
Document ParseDocument(std::string_view text, std::string_view source = "<input>");

// Serialized forms list bidders in rank order with every field explicit,
// so re-loading reproduces the same object.
std::string SerializeInstance(const QueryInstance& instance);
std::string SerializeProblem(const ColGenProblem& problem);

}  // namespace adslate

#endif  // ADSLATE_INSTANCE_IO_HPP_
