// Copyright 2026 The reviewkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reviewkit/template_engine.hpp"

namespace reviewkit {
namespace {

// Reconstructed from the public ICLR 2024/2025 reviewer form.
constexpr std::string_view kIclrTemplate = R"(venue: iclr-default
field: Summary
  kind: text
  description: Briefly summarize the paper and its contributions. This is not the place to critique the paper; the authors should generally agree with a well-written summary.
field: Soundness
  kind: rating
  description: Please assign the paper a numerical rating on the following scale to indicate the soundness of the technical claims, experimental and research methodology and on whether the central claims of the paper are adequately supported with evidence.
  scale: 1=poor, 2=fair, 3=good, 4=excellent
field: Presentation
  kind: rating
  description: Please assign the paper a numerical rating on the following scale to indicate the quality of the presentation. This should take into account the writing style and clarity, as well as contextualization relative to prior work.
  scale: 1=poor, 2=fair, 3=good, 4=excellent
field: Contribution
  kind: rating
  description: Please assign the paper a numerical rating on the following scale to indicate the quality of the overall contribution this paper makes to the research area being studied. Are the questions being asked important? Does the paper bring a significant originality of ideas and/or execution? Are the results valuable to share with the broader community?
  scale: 1=poor, 2=fair, 3=good, 4=excellent
field: Strengths
  kind: text
  description: A substantive assessment of the strengths of the paper, touching on each of the following dimensions: originality, quality, clarity, and significance.
field: Weaknesses
  kind: text
  description: A substantive assessment of the weaknesses of the paper. Focus on constructive and actionable insights on how the work could improve towards its stated goals.
field: Questions
  kind: text
  description: Please list up and carefully describe any questions and suggestions for the authors. Think of the things where a response from the author can change your opinion, clarify a confusion or address a limitation.
field: Rating
  kind: rating
  recommendation: true
  description: Please provide an overall rating for this submission.
  scale: 1=strong reject, 3=reject, not good enough, 5=marginally below the acceptance threshold, 6=marginally above the acceptance threshold, 8=accept, good paper, 10=strong accept, should be highlighted at the conference
field: Confidence
  kind: rating
  description: Please provide a confidence score for your assessment of this submission.
  scale: 1=You are unable to assess this paper, 2=You are willing to defend your assessment, but it is quite likely that you did not understand the central parts of the submission, 3=You are fairly confident in your assessment, 4=You are confident in your assessment, but not absolutely certain, 5=You are absolutely certain about your assessment
)";

// Reconstructed from the public NeurIPS 2024 reviewer form.
constexpr std::string_view kNeuripsTemplate = R"(venue: neurips-default
field: Summary
  kind: text
  description: Briefly summarize the paper and its contributions. This is not the place to critique the paper; the authors should generally agree with a well-written summary.
field: Soundness
  kind: rating
  description: Please assign the paper a numerical rating on the following scale to indicate the soundness of the technical claims, experimental and research methodology and on whether the central claims of the paper are adequately supported with evidence.
  scale: 1=poor, 2=fair, 3=good, 4=excellent
field: Presentation
  kind: rating
  description: Please assign the paper a numerical rating on the following scale to indicate the quality of the presentation. This should take into account the writing style and clarity, as well as contextualization relative to prior work.
  scale: 1=poor, 2=fair, 3=good, 4=excellent
field: Contribution
  kind: rating
  description: Please assign the paper a numerical rating on the following scale to indicate the quality of the overall contribution this paper makes to the research area being studied.
  scale: 1=poor, 2=fair, 3=good, 4=excellent
field: Strengths
  kind: text
  description: A substantive assessment of the strengths of the paper, touching on each of the following dimensions: originality, quality, clarity, and significance.
field: Weaknesses
  kind: text
  description: A substantive assessment of the weaknesses of the paper. Focus on constructive and actionable insights on how the work could improve towards its stated goals.
field: Questions
  kind: text
  description: Please list up and carefully describe any questions and suggestions for the authors.
field: Limitations
  kind: text
  description: Have the authors adequately addressed the limitations and potential negative societal impact of their work? If not, please include constructive suggestions for improvement.
field: Rating
  kind: rating
  recommendation: true
  description: Please provide an overall rating for this submission.
  scale: 1=Very Strong Reject, 2=Strong Reject, 3=Reject, 4=Borderline reject, 5=Borderline accept, 6=Weak Accept, 7=Accept, 8=Strong Accept, 9=Very Strong Accept, 10=Award quality
field: Confidence
  kind: rating
  description: Please provide a confidence score for your assessment of this submission.
  scale: 1=Your assessment is an educated guess, 2=You are willing to defend your assessment, but it is quite likely that you did not understand the central parts of the submission, 3=You are fairly confident in your assessment, 4=You are confident in your assessment, but not absolutely certain, 5=You are absolutely certain about your assessment
)";

}  // namespace

std::vector<ReviewTemplate> BuiltinTemplates() {
  return {ParseTemplate(kIclrTemplate), ParseTemplate(kNeuripsTemplate)};
}

}  // namespace reviewkit
