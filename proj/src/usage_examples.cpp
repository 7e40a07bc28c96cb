#include "apiinfer/usage_examples.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <stdexcept>

namespace apiinfer {

namespace {

constexpr std::pair<UsageForm, std::string_view> kFormNames[] = {
    {UsageForm::py_regular_args, "py_regular_args"},
    {UsageForm::py_regular_qualified_args, "py_regular_qualified_args"},
    {UsageForm::py_regular_noargs, "py_regular_noargs"},
    {UsageForm::py_regular_qualified_noargs, "py_regular_qualified_noargs"},
    {UsageForm::py_method_instance_args, "py_method_instance_args"},
    {UsageForm::py_method_class_args, "py_method_class_args"},
    {UsageForm::py_method_instance_noargs, "py_method_instance_noargs"},
    {UsageForm::py_method_class_noargs, "py_method_class_noargs"},
    {UsageForm::py_ctor_args, "py_ctor_args"},
    {UsageForm::py_ctor_assign_args, "py_ctor_assign_args"},
    {UsageForm::py_ctor_noargs, "py_ctor_noargs"},
    {UsageForm::py_ctor_assign_noargs, "py_ctor_assign_noargs"},
    {UsageForm::java_instance_call, "java_instance_call"},
    {UsageForm::java_static_call, "java_static_call"},
    {UsageForm::java_typed_decl, "java_typed_decl"},
    {UsageForm::java_ctor_assign, "java_ctor_assign"},
    {UsageForm::java_ctor_new, "java_ctor_new"},
    {UsageForm::java_inner_call, "java_inner_call"},
};

constexpr std::array kSimpleJavaTypes = {"void", "boolean", "byte",  "char",   "short",
                                         "int",  "long",    "float", "double", "String"};

bool upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool lower_or_digit(char c) {
  return std::islower(static_cast<unsigned char>(c)) != 0 || std::isdigit(static_cast<unsigned char>(c)) != 0;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string file_stem(std::string_view path) {
  auto slash = path.rfind('/');
  auto base = slash == std::string_view::npos ? path : path.substr(slash + 1);
  auto dot = base.rfind('.');
  return std::string(dot == std::string_view::npos ? base : base.substr(0, dot));
}

// Variable name for a java type: generics and array suffixes dropped.
std::string java_var_name(std::string_view type) {
  std::string_view base = type.substr(0, type.find('<'));
  const bool array = type.find('[') != std::string_view::npos;
  base = base.substr(0, base.find('['));
  if (auto dot = base.rfind('.'); dot != std::string_view::npos) base = base.substr(dot + 1);
  while (!base.empty() && base.back() == ' ') base.remove_suffix(1);
  std::string name = camel_case(base);
  if (array) name += "Array";
  return name;
}

}  // namespace

std::string_view to_string(UsageForm form) {
  for (const auto& [f, name] : kFormNames) {
    if (f == form) return name;
  }
  return "unknown";
}

UsageForm usage_form_from_string(std::string_view name) {
  for (const auto& [f, n] : kFormNames) {
    if (n == name) return f;
  }
  throw std::invalid_argument("unknown usage form: " + std::string(name));
}

std::string snake_case(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    const char c = name[i];
    if (upper(c) && i > 0 && name[i - 1] != '_') {
      const bool after_lower = lower_or_digit(name[i - 1]);
      const bool ends_run = upper(name[i - 1]) && i + 1 < name.size() &&
                            std::islower(static_cast<unsigned char>(name[i + 1]));
      if (after_lower || ends_run) out += '_';
    }
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string camel_case(std::string_view name) {
  std::string out(name);
  if (!out.empty()) out[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[0])));
  return out;
}

bool is_complex_java_type(std::string_view type) {
  return std::find(kSimpleJavaTypes.begin(), kSimpleJavaTypes.end(), type) == kSimpleJavaTypes.end();
}

std::vector<UsageExample> synth_usage_examples(const ApiRecord& record) {
  std::vector<UsageExample> out;
  auto add = [&](UsageForm form, std::string text) {
    const bool dup = std::any_of(out.begin(), out.end(), [&](const UsageExample& e) { return e.text == text; });
    if (!dup) out.push_back({std::move(text), form});
  };
  const std::string args = "(" + join(record.param_names, ", ") + ")";
  const std::string& name = record.name;
  const std::string cls = record.class_name.value_or("");

  switch (record.kind) {
    case ApiKind::regular_function: {
      if (record.language != Language::python) break;
      const std::string stem = file_stem(record.file);
      add(UsageForm::py_regular_args, name + args);
      add(UsageForm::py_regular_qualified_args, stem + "." + name + args);
      add(UsageForm::py_regular_noargs, name + "()");
      add(UsageForm::py_regular_qualified_noargs, stem + "." + name + "()");
      break;
    }
    case ApiKind::class_function: {
      if (record.language != Language::python || cls.empty()) break;
      const std::string inst = snake_case(cls);
      add(UsageForm::py_method_instance_args, inst + "." + name + args);
      add(UsageForm::py_method_class_args, cls + "." + name + args);
      add(UsageForm::py_method_instance_noargs, inst + "." + name + "()");
      add(UsageForm::py_method_class_noargs, cls + "." + name + "()");
      break;
    }
    case ApiKind::constructor: {
      if (record.language != Language::python || cls.empty()) break;
      const std::string inst = snake_case(cls);
      add(UsageForm::py_ctor_args, cls + args);
      add(UsageForm::py_ctor_assign_args, inst + " = " + cls + args);
      add(UsageForm::py_ctor_noargs, cls + "()");
      add(UsageForm::py_ctor_assign_noargs, inst + " = " + cls + "()");
      break;
    }
    case ApiKind::java_method: {
      if (record.language != Language::java || cls.empty()) break;
      const std::string call = camel_case(cls) + "." + name + args;
      add(UsageForm::java_instance_call, call);
      if (record.is_static) add(UsageForm::java_static_call, cls + "." + name + args);
      if (record.return_type && is_complex_java_type(*record.return_type)) {
        add(UsageForm::java_typed_decl,
            *record.return_type + " " + java_var_name(*record.return_type) + " = " + call);
      }
      break;
    }
    case ApiKind::java_constructor: {
      if (record.language != Language::java || cls.empty()) break;
      add(UsageForm::java_ctor_assign, cls + " " + camel_case(cls) + " = new " + cls + args);
      add(UsageForm::java_ctor_new, "new " + cls + args);
      break;
    }
    case ApiKind::java_inner_class_method: {
      if (record.language != Language::java || cls.empty()) break;
      const std::string outer = record.outer_class.value_or(cls);
      add(UsageForm::java_inner_call, camel_case(outer) + "." + camel_case(cls) + "." + name + args);
      break;
    }
  }
  return out;
}

}  // namespace apiinfer
