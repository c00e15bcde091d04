// HTTP client: the UI's only source of semantic content.
async function getJson(url) {
    const reply = await fetch(url);
    if (!reply.ok) {
        throw new Error(`${url}: ${reply.status} ${reply.statusText}`);
    }
    return (await reply.json());
}
export function realApi(base = "") {
    return {
        goals: () => getJson(`${base}/api/goals`),
        tree: (goal) => getJson(`${base}/api/tree?goal=${encodeURIComponent(goal)}`),
        impls: (traitPath) => getJson(`${base}/api/impls?trait=${encodeURIComponent(traitPath)}`),
        source: (file, line) => getJson(`${base}/api/source?file=${encodeURIComponent(file)}&line=${line}`),
        events: (onDocument) => {
            const stream = new EventSource(`${base}/api/events`);
            stream.addEventListener("document", onDocument);
            return () => stream.close();
        },
    };
}
