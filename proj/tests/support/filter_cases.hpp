// Hand-labeled snippet-usefulness cases, ten per language, shared by the unit
// tests and the acceptance checks. Labels were assigned by reading each
// snippet, not by running the filter.
#pragma once

#include <cstddef>

#include "snippetforge/filters.hpp"
#include "snippetforge/language.hpp"

namespace filter_cases {

struct FilterCase {
  const char* label;
  snippetforge::LanguageId language;
  const char* snippet;
  bool useful;
  snippetforge::UselessReason reason;  // meaningful only when !useful
};

using snippetforge::LanguageId;
using snippetforge::UselessReason;

inline constexpr FilterCase kCases[] = {
    // python
    {"py import single", LanguageId::Python, "import os\n", false, UselessReason::ImportOnly},
    {"py from+import", LanguageId::Python, "from collections import deque\nimport sys\n", false,
     UselessReason::ImportOnly},
    {"py imports with blank", LanguageId::Python, "import math\n\nimport re\n", false,
     UselessReason::ImportOnly},
    {"py whitespace", LanguageId::Python, "   \n\t\n", false, UselessReason::WhitespaceOnly},
    {"py empty", LanguageId::Python, "", false, UselessReason::WhitespaceOnly},
    {"py import then code", LanguageId::Python, "import os\nx = 1\n", true,
     UselessReason::ImportOnly},
    {"py assignment", LanguageId::Python, "x = compute()\n", true, UselessReason::ImportOnly},
    {"py print", LanguageId::Python, "print(total)\n", true, UselessReason::ImportOnly},
    {"py comprehension", LanguageId::Python, "result = [i * i for i in range(10)]\n", true,
     UselessReason::ImportOnly},
    {"py return", LanguageId::Python, "\nreturn n\n", true, UselessReason::ImportOnly},

    // java
    {"java import", LanguageId::Java, "import java.util.*;\n", false, UselessReason::ImportOnly},
    {"java package", LanguageId::Java, "package com.example.app;\n", false,
     UselessReason::ImportOnly},
    {"java import plus brace", LanguageId::Java, "import java.io.*;\n}\n", false,
     UselessReason::ImportOnly},
    {"java closing brace", LanguageId::Java, "}\n", false, UselessReason::BoilerplateOnly},
    {"java brace ladder", LanguageId::Java, "    }\n}\n", false, UselessReason::BoilerplateOnly},
    {"java lambda close", LanguageId::Java, "});\n", false, UselessReason::BoilerplateOnly},
    {"java whitespace", LanguageId::Java, "\n   \n", false, UselessReason::WhitespaceOnly},
    {"java statement", LanguageId::Java, "int total = a + b;\n", true, UselessReason::ImportOnly},
    {"java import then code", LanguageId::Java, "import java.util.*;\nSystem.out.println(x);\n",
     true, UselessReason::ImportOnly},
    {"java main signature", LanguageId::Java, "public static void main(String[] args) {\n", true,
     UselessReason::ImportOnly},

    // cpp
    {"cpp include", LanguageId::Cpp, "#include <vector>\n", false, UselessReason::ImportOnly},
    {"cpp includes", LanguageId::Cpp, "#include <iostream>\n#include <map>\n", false,
     UselessReason::ImportOnly},
    {"cpp using namespace", LanguageId::Cpp, "using namespace std;\n", false,
     UselessReason::ImportOnly},
    {"cpp define", LanguageId::Cpp, "#define MAX 100\n", false, UselessReason::ImportOnly},
    {"cpp closing brace", LanguageId::Cpp, "}\n", false, UselessReason::BoilerplateOnly},
    {"cpp struct close", LanguageId::Cpp, "};\n", false, UselessReason::BoilerplateOnly},
    {"cpp whitespace", LanguageId::Cpp, "  \n\n", false, UselessReason::WhitespaceOnly},
    {"cpp statement", LanguageId::Cpp, "int x = 42;\n", true, UselessReason::ImportOnly},
    {"cpp include then code", LanguageId::Cpp, "#include <cmath>\ndouble r = sqrt(2.0);\n", true,
     UselessReason::ImportOnly},
    {"cpp stream", LanguageId::Cpp, "std::cout << ans << std::endl;\n", true,
     UselessReason::ImportOnly},
};

inline constexpr std::size_t kCaseCount = sizeof(kCases) / sizeof(kCases[0]);
static_assert(kCaseCount == 30);

}  // namespace filter_cases
