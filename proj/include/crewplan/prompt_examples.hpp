#ifndef CREWPLAN_PROMPT_EXAMPLES_HPP
#define CREWPLAN_PROMPT_EXAMPLES_HPP

#include <string>
#include <vector>

namespace crewplan {

// Worked examples shown to the model. All of them live in a study/pantry
// scene that is not part of the benchmark, so every benchmark task stays
// unseen. Comment lines are whole lines: the leading block is the summary,
// `#` lines inside the body are line comments. The ablation switches remove
// exactly those lines.

struct DecompositionExample {
  std::string instruction;
  std::string decomposition_text;
};

struct CoalitionExample {
  std::string robots_text;
  std::string decomposition_text;
  std::string policy_json;
};

struct AllocationExample {
  std::string robots_text;
  std::string decomposition_text;
  std::string policy_json;
  std::string plan_text;
};

inline std::vector<DecompositionExample> default_decomposition_examples() {
  return {
      {"Turn off the table lamp",
       R"(# Summary: a single sub-task walks to the table lamp and switches it off.
tasks {
  task t1 "turn off the table lamp" order 0 {
    # reach the lamp before toggling it
    GoToObject(TableLamp);
    SwitchOff(TableLamp);
  }
}
)"},
      {"Chill the banana",
       R"(# Summary: move the banana into the freezer to chill it.
tasks {
  task t1 "put the banana in the freezer" order 0 {
    # fetch the banana
    GoToObject(Banana);
    PickupObject(Banana);
    # stow it in the freezer
    GoToObject(Freezer);
    OpenObject(Freezer);
    PutObject(Banana, Freezer);
    CloseObject(Freezer);
  }
}
)"},
      {"Turn on the radio and the reading lamp",
       R"(# Summary: two independent toggles, safe to run in parallel.
tasks {
  task t1 "turn on the radio" order 0 {
    # the radio and the lamp do not interact
    GoToObject(Radio);
    SwitchOn(Radio);
  }
  task t2 "turn on the reading lamp" order 0 {
    GoToObject(ReadingLamp);
    SwitchOn(ReadingLamp);
  }
}
)"},
      {"Wash the cup and put it in the cupboard",
       R"(# Summary: washing must finish before the cup is stowed, so the
# sub-tasks are ordered sequentially.
tasks {
  task t1 "wash the cup" order 0 {
    GoToObject(Cup);
    CleanObject(Cup);
  }
  task t2 "stow the cup in the cupboard" order 1 {
    # pick the clean cup up and carry it over
    GoToObject(Cup);
    PickupObject(Cup);
    GoToObject(Cupboard);
    OpenObject(Cupboard);
    PutObject(Cup, Cupboard);
    CloseObject(Cupboard);
  }
}
)"},
      {"Make the study dark and play the radio",
       R"(# Summary: both lamps can go dark in parallel; the radio comes on
# once the room is dark.
tasks {
  task t1 "turn off the table lamp" order 0 {
    GoToObject(TableLamp);
    SwitchOff(TableLamp);
  }
  task t2 "turn off the reading lamp" order 0 {
    GoToObject(ReadingLamp);
    SwitchOff(ReadingLamp);
  }
  task t3 "turn on the radio" order 1 {
    # waits for the lamps so the room is dark first
    GoToObject(Radio);
    SwitchOn(Radio);
  }
}
)"},
  };
}

inline std::vector<CoalitionExample> default_coalition_examples() {
  return {
      // One-to-one assignment: a single robot covers the whole skill set.
      {R"(robot1: GoToObject, SwitchOn, SwitchOff
robot2: GoToObject, PickupObject, PutObject
)",
       R"(# Summary: a single toggle, one robot suffices.
tasks {
  task t1 "turn off the table lamp" order 0 {
    # the whole skill set is {GoToObject, SwitchOff}
    GoToObject(TableLamp);
    SwitchOff(TableLamp);
  }
}
)",
       R"({
  "decisions": [
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, SwitchOff}",
      "subtask_id": "t1",
      "team": [1]
    }
  ]
}
)"},
      // Skill gap: no single robot covers the sub-task, two pool their skills.
      {R"(robot1: GoToObject, OpenObject, CloseObject
robot2: GoToObject, PickupObject, PutObject
)",
       R"(# Summary: opening and carrying are split across the two robots.
tasks {
  task t1 "take the cup out of the cupboard" order 0 {
    # robot1 opens, robot2 carries; the sub-task needs both
    GoToObject(Cupboard);
    OpenObject(Cupboard);
    GoToObject(Cup);
    PickupObject(Cup);
    GoToObject(Bench);
    PutObject(Cup, Bench);
  }
}
)",
       R"({
  "decisions": [
    {
      "kind": "team_union",
      "rationale": "no single robot covers {GoToObject, PickupObject, PutObject, OpenObject}; team {1, 2} pools its skills",
      "subtask_id": "t1",
      "team": [1, 2]
    }
  ]
}
)"},
      // Capacity limit: the crate exceeds any single pickup limit, so two
      // robots lift together.
      {R"(robot1: GoToObject, PickupObject (max 4.0 kg), PutObject
robot2: GoToObject, PickupObject (max 4.0 kg), PutObject
)",
       R"(# Summary: the crate weighs 6 kg, above any single pickup limit.
tasks {
  task t1 "move the crate onto the bench" order 0 demand PickupObject 6 {
    # two robots pool 8 kg of lifting capacity
    GoToObject(Crate);
    PickupObject(Crate);
    GoToObject(Bench);
    PutObject(Crate, Bench);
  }
}
)",
       R"({
  "decisions": [
    {
      "kind": "team_capacity",
      "rationale": "skills {GoToObject, PickupObject, PutObject} are singly coverable, but no single robot meets PickupObject demand 6; team {1, 2} pools 8",
      "subtask_id": "t1",
      "team": [1, 2]
    }
  ]
}
)"},
  };
}

inline std::vector<AllocationExample> default_allocation_examples() {
  return {
      // Strictly sequential, one robot.
      {R"(robot1: GoToObject, PickupObject, PutObject, OpenObject, CloseObject, CleanObject
)",
       R"(tasks {
  task t1 "wash the cup" order 0 {
    GoToObject(Cup);
    CleanObject(Cup);
  }
  task t2 "stow the cup in the cupboard" order 1 {
    GoToObject(Cup);
    PickupObject(Cup);
    GoToObject(Cupboard);
    OpenObject(Cupboard);
    PutObject(Cup, Cupboard);
    CloseObject(Cupboard);
  }
}
)",
       R"({
  "decisions": [
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, CleanObject}",
      "subtask_id": "t1",
      "team": [1]
    },
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, PickupObject, PutObject, OpenObject, CloseObject}",
      "subtask_id": "t2",
      "team": [1]
    }
  ]
}
)",
       R"(# Summary: one robot handles both ordered sub-tasks in sequence.
plan {
  seq {
    # wash first
    assign robot1 {
      GoToObject(Cup);
      CleanObject(Cup);
    }
    # then stow the clean cup
    assign robot1 {
      GoToObject(Cup);
      PickupObject(Cup);
      GoToObject(Cupboard);
      OpenObject(Cupboard);
      PutObject(Cup, Cupboard);
      CloseObject(Cupboard);
    }
  }
}
)"},
      // Fully parallel, threaded across two robots.
      {R"(robot1: GoToObject, SwitchOn, SwitchOff
robot2: GoToObject, SwitchOn, SwitchOff
)",
       R"(tasks {
  task t1 "turn on the radio" order 0 {
    GoToObject(Radio);
    SwitchOn(Radio);
  }
  task t2 "turn on the reading lamp" order 0 {
    GoToObject(ReadingLamp);
    SwitchOn(ReadingLamp);
  }
}
)",
       R"({
  "decisions": [
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, SwitchOn}",
      "subtask_id": "t1",
      "team": [1]
    },
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, SwitchOn}",
      "subtask_id": "t2",
      "team": [2]
    }
  ]
}
)",
       R"(# Summary: the two toggles touch different objects, so two robots
# run them as parallel branches.
plan {
  par {
    assign robot1 {
      GoToObject(Radio);
      SwitchOn(Radio);
    }
    assign robot2 {
      GoToObject(ReadingLamp);
      SwitchOn(ReadingLamp);
    }
  }
}
)"},
      // Hybrid: a parallel wave followed by a sequential tail.
      {R"(robot1: GoToObject, SwitchOn, SwitchOff
robot2: GoToObject, SwitchOn, SwitchOff
)",
       R"(tasks {
  task t1 "turn off the table lamp" order 0 {
    GoToObject(TableLamp);
    SwitchOff(TableLamp);
  }
  task t2 "turn off the reading lamp" order 0 {
    GoToObject(ReadingLamp);
    SwitchOff(ReadingLamp);
  }
  task t3 "turn on the radio" order 1 {
    GoToObject(Radio);
    SwitchOn(Radio);
  }
}
)",
       R"({
  "decisions": [
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, SwitchOff}",
      "subtask_id": "t1",
      "team": [1]
    },
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, SwitchOff}",
      "subtask_id": "t2",
      "team": [2]
    },
    {
      "kind": "single_robot",
      "rationale": "robot1 alone covers {GoToObject, SwitchOn}",
      "subtask_id": "t3",
      "team": [1]
    }
  ]
}
)",
       R"(# Summary: lamps go dark in parallel, then one robot starts the radio.
plan {
  seq {
    par {
      assign robot1 {
        GoToObject(TableLamp);
        SwitchOff(TableLamp);
      }
      assign robot2 {
        GoToObject(ReadingLamp);
        SwitchOff(ReadingLamp);
      }
    }
    # the radio waits for the lamps
    assign robot1 {
      GoToObject(Radio);
      SwitchOn(Radio);
    }
  }
}
)"},
      // A team lifting together under a capacity constraint.
      {R"(robot1: GoToObject, PickupObject (max 4.0 kg), PutObject
robot2: GoToObject, PickupObject (max 4.0 kg), PutObject
)",
       R"(tasks {
  task t1 "move the crate onto the bench" order 0 demand PickupObject 6 {
    GoToObject(Crate);
    PickupObject(Crate);
    GoToObject(Bench);
    PutObject(Crate, Bench);
  }
}
)",
       R"({
  "decisions": [
    {
      "kind": "team_capacity",
      "rationale": "skills {GoToObject, PickupObject, PutObject} are singly coverable, but no single robot meets PickupObject demand 6; team {1, 2} pools 8",
      "subtask_id": "t1",
      "team": [1, 2]
    }
  ]
}
)",
       R"(# Summary: the crate is too heavy for one robot, so both lift it together.
plan {
  seq {
    assign robot1, robot2 {
      GoToObject(Crate);
      PickupObject(Crate);
      GoToObject(Bench);
      PutObject(Crate, Bench);
    }
  }
}
)"},
  };
}

}  // namespace crewplan

#endif  // CREWPLAN_PROMPT_EXAMPLES_HPP
