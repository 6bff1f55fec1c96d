import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";

export function writeDataset(lines: string[], extra?: Record<string, string[]>): string {
  const dir = fs.mkdtempSync(path.join(os.tmpdir(), "kgx-"));
  fs.writeFileSync(path.join(dir, "train.txt"), lines.join("\n") + "\n");
  for (const [split, rows] of Object.entries(extra ?? {})) {
    fs.writeFileSync(path.join(dir, `${split}.txt`), rows.join("\n") + "\n");
  }
  return dir;
}
