/**
 * Canned service payloads for the demo "devex" model, captured verbatim from
 * a running service so the numbers in assertions are the numbers on the wire.
 * POSTERIOR_* entries are infer() responses for the evidence in their name.
 */

import type { Marginals, ModelSummary, NetworkDocument } from "../src/types.js";

export const LISTING: ModelSummary[] = [
  {
    "edge_count": 10,
    "id": "delivery",
    "name": "Delivery performance",
    "node_count": 9
  },
  {
    "edge_count": 5,
    "id": "devex",
    "name": "Developer experience",
    "node_count": 6
  }
];

export const DEVEX_DOC: NetworkDocument = {
  "id": "devex",
  "name": "Developer experience",
  "nodes": [
    {
      "id": "code_understanding",
      "label": "Ease of understanding the code base",
      "position": {
        "x": 480.0,
        "y": 40.0
      },
      "states": [
        "very_low",
        "low",
        "medium",
        "high",
        "very_high"
      ]
    },
    {
      "id": "developer_happiness",
      "label": "Overall developer happiness",
      "position": {
        "x": 480.0,
        "y": 400.0
      },
      "states": [
        "very_low",
        "low",
        "medium",
        "high",
        "very_high"
      ]
    },
    {
      "id": "environment_performance",
      "label": "Development environment performance",
      "position": {
        "x": 260.0,
        "y": 40.0
      },
      "states": [
        "very_low",
        "low",
        "medium",
        "high",
        "very_high"
      ]
    },
    {
      "id": "focus_without_distraction",
      "label": "Ability to focus without distraction",
      "position": {
        "x": 40.0,
        "y": 40.0
      },
      "states": [
        "very_low",
        "low",
        "medium",
        "high",
        "very_high"
      ]
    },
    {
      "id": "meaningful_work",
      "label": "Work feels meaningful",
      "position": {
        "x": 700.0,
        "y": 40.0
      },
      "states": [
        "very_low",
        "low",
        "medium",
        "high",
        "very_high"
      ]
    },
    {
      "id": "time_lost_to_obstacles",
      "label": "Time lost to engineering obstacles",
      "position": {
        "x": 260.0,
        "y": 220.0
      },
      "states": [
        "very_low",
        "low",
        "medium",
        "high",
        "very_high"
      ]
    }
  ],
  "edges": [
    {
      "from": "code_understanding",
      "tag": "cause-consequence",
      "to": "time_lost_to_obstacles"
    },
    {
      "from": "environment_performance",
      "tag": "cause-consequence",
      "to": "time_lost_to_obstacles"
    },
    {
      "from": "focus_without_distraction",
      "tag": "cause-consequence",
      "to": "time_lost_to_obstacles"
    },
    {
      "from": "meaningful_work",
      "tag": "cause-consequence",
      "to": "developer_happiness"
    },
    {
      "from": "time_lost_to_obstacles",
      "tag": "cause-consequence",
      "to": "developer_happiness"
    }
  ],
  "priors": {
    "code_understanding": [
      0.098182,
      0.243695,
      0.420469,
      0.169403,
      0.068251
    ],
    "developer_happiness": [
      0.017809,
      0.09698,
      0.574183,
      0.229627,
      0.081401
    ],
    "environment_performance": [
      0.026914,
      0.081757,
      0.248356,
      0.483732,
      0.159241
    ],
    "focus_without_distraction": [
      0.060044,
      0.163217,
      0.443671,
      0.243492,
      0.089576
    ],
    "meaningful_work": [
      0.042639,
      0.115906,
      0.315065,
      0.384821,
      0.141568
    ],
    "time_lost_to_obstacles": [
      0.040644,
      0.301928,
      0.506444,
      0.135056,
      0.015927
    ]
  }
};

export const POSTERIOR_TIME_LOST_4: Marginals = {
  "code_understanding": [
    0.298152,
    0.349097,
    0.287741,
    0.054497,
    0.010513
  ],
  "developer_happiness": [
    0.174115,
    0.317516,
    0.453855,
    0.049183,
    0.00533
  ],
  "environment_performance": [
    0.150922,
    0.214994,
    0.306304,
    0.283127,
    0.044653
  ],
  "focus_without_distraction": [
    0.227918,
    0.289832,
    0.36777,
    0.097428,
    0.017052
  ],
  "meaningful_work": [
    0.042639,
    0.115906,
    0.315065,
    0.384821,
    0.141568
  ],
  "time_lost_to_obstacles": [
    0.0,
    0.0,
    0.0,
    0.0,
    1.0
  ]
};

export const POSTERIOR_TIME_LOST_4_MEANINGFUL_0: Marginals = {
  "code_understanding": [
    0.298152,
    0.349097,
    0.287741,
    0.054497,
    0.010513
  ],
  "developer_happiness": [
    0.891645,
    0.096626,
    0.010471,
    0.001135,
    0.000123
  ],
  "environment_performance": [
    0.150922,
    0.214994,
    0.306304,
    0.283127,
    0.044653
  ],
  "focus_without_distraction": [
    0.227918,
    0.289832,
    0.36777,
    0.097428,
    0.017052
  ],
  "meaningful_work": [
    1.0,
    0.0,
    0.0,
    0.0,
    0.0
  ],
  "time_lost_to_obstacles": [
    0.0,
    0.0,
    0.0,
    0.0,
    1.0
  ]
};
